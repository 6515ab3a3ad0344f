#pragma once
#include "toescat/intervals.hpp"
#include "toescat/symbol.hpp"
#include <string>
#include <vector>

namespace toescat {

//! Preimage arc (alpha, beta) traversed counterclockwise; alpha in [0, 2pi),
//! beta = alpha + arc length.
struct Arc {
  double alpha{0.0};
  double beta{0.0};
  double length() const { return beta - alpha; }
  double mid() const { return 0.5 * (alpha + beta); }
};

//! `minus`: arcs where the symbol increases, `plus`: where it decreases.
struct PreimageArcs {
  std::vector<Arc> minus{};
  std::vector<Arc> plus{};
};

struct MultiplicityReport {
  int n_plus{0};
  int n_minus{0};
  int s_plus{0};
  int s_minus{0};
  int m{0};
  //! Jump points whose jump interval contains the band.
  std::vector<double> jumps_plus{};
  std::vector<double> jumps_minus{};
};

struct Probe {
  Interval interval{};
  MultiplicityReport report{};
};

struct SpectrumPartition {
  Interval gamma{};
  IntervalSet sigma_omega{};
  std::vector<double> flat_values{};
  IntervalSet upsilon{};
  std::vector<double> exceptional{};
  IntervalSet thin{};
  IntervalSet thick{};
  IntervalSet mixed{};
  std::vector<Probe> probes{};
};

enum class PointClass { Thin, Thick, Mixed, Exceptional, OutsideSpectrum };
std::string to_string(PointClass c);

bool is_admissible(const PiecewiseSymbol &symbol, double lo, double hi,
                   double margin = 1e-6);
PreimageArcs preimage_arcs(const PiecewiseSymbol &symbol, double lo, double hi);
MultiplicityReport multiplicity(const PiecewiseSymbol &symbol, double lo,
                                double hi);
SpectrumPartition partition_spectrum(const PiecewiseSymbol &symbol);
PointClass classify_point(const PiecewiseSymbol &symbol, double lambda);

//! Admissible probe inside (a, b): centred, half the width, shrunk until
//! admissible. Returns false if none is found.
bool probe_interval(const PiecewiseSymbol &symbol, Interval component,
                    Interval &probe);

} // namespace toescat
