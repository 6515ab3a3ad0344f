#pragma once
#include "toescat/intervals.hpp"
#include "toescat/polynomial.hpp"
#include <complex>
#include <json.hpp>
#include <random>
#include <string>
#include <vector>

namespace toescat {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

//! Reduce an angle to [0, 2pi).
double wrap_angle(double x);
//! Signed representative of x in [-pi, pi).
double wrap_signed(double x);

enum class Side { Left, Right, Interior };
enum class PieceKind { Polynomial, Cosine };

//==============================================================================
//! One smooth piece w(x) = sum c_m (x - left)^m on (left, right), right unwrapped.
//! The cosine piece ignores `coeffs` and evaluates cos x.
struct PolyPiece {
  double left{0.0};
  double right{0.0};
  poly::Coeffs coeffs{};
  PieceKind kind{PieceKind::Polynomial};

  double width() const { return right - left; }
  //! Value and slope at local coordinate s = x - left.
  double value_local(double s) const;
  double slope_local(double s) const;
  bool flat() const;
  //! Interior zeros of the slope as local coordinates, sorted.
  std::vector<double> critical_points_local() const;
};

enum class BreakClass { SPlus, SMinus, SZero, Smooth };
std::string to_string(BreakClass c);

struct JumpInfo {
  double eta{0.0};
  double left_limit{0.0};
  double right_limit{0.0};
  double left_slope{0.0};
  double right_slope{0.0};
  BreakClass cls{BreakClass::Smooth};
  Interval jump_interval{};
  bool is_jump() const {
    return cls == BreakClass::SPlus || cls == BreakClass::SMinus;
  }
};

struct SpectralSets {
  double gamma1{0.0};
  double gamma2{0.0};
  IntervalSet sigma_omega{}; // images of non-flat pieces
  std::vector<double> flat_values{};
  IntervalSet upsilon{};
  std::vector<double> crit_values{};
  std::vector<double> thresholds{};
  std::vector<double> exceptional{};
};

//! Part of a monotone segment lying inside one piece; a, b are local
//! coordinates of that piece, `shift` the unwrapped angle of the piece start.
struct SegmentPart {
  int piece{0};
  double a{0.0};
  double b{0.0};
  double shift{0.0};
};

//! Maximal arc on which the symbol is continuous and strictly monotone
//! (or constant when direction == 0). Endpoints are unwrapped angles.
struct MonotoneSegment {
  double left{0.0};
  double right{0.0};
  int direction{0};
  double v_left{0.0};
  double v_right{0.0};
  std::vector<SegmentPart> parts{};
};

struct FourierCoeffs {
  int M{0};
  std::vector<std::complex<double>> c{}; // index n + 2M for |n| <= 2M
  std::complex<double> operator()(int n) const {
    return c[std::size_t(n + 2 * M)];
  }
};

//==============================================================================
//! Real piecewise-polynomial symbol on the circle.
class PiecewiseSymbol {
public:
  //! Piece i lives on (breakpoints[i], breakpoints[i+1]); the last wraps.
  PiecewiseSymbol(std::string name, std::vector<double> breakpoints,
                  std::vector<poly::Coeffs> coeffs);

  static PiecewiseSymbol cosine();
  static PiecewiseSymbol indicator(double x1, double x2);
  static PiecewiseSymbol fig3();
  //! Two-valued step: `on` inside the arc (x1, x2), `off` elsewhere.
  static PiecewiseSymbol step(double x1, double x2, double on, double off,
                              std::string name);
  //! "cosine", "fig3", "indicator:<x1>:<x2>".
  static PiecewiseSymbol builtin(const std::string &name);
  static PiecewiseSymbol from_json(const nlohmann::json &j);
  //! Built-in name, or a path to a JSON file.
  static PiecewiseSymbol load(const std::string &source);
  nlohmann::json to_json() const;

  const std::string &name() const { return m_name; }
  const std::vector<PolyPiece> &pieces() const { return m_pieces; }
  std::vector<double> breakpoints() const;
  bool is_cosine() const { return m_pieces[0].kind == PieceKind::Cosine; }

  double eval(double x, Side side = Side::Interior) const;
  double slope(double x, Side side = Side::Interior) const;
  //! Value at base + offset, resolving the piece from the sign of offset
  //! when base is a breakpoint (offset may be far below the angle ulp).
  double eval_offset(double base, double offset) const;

  //! Index of the breakpoint at x (within 1e-12), or -1.
  int breakpoint_index(double x) const;

  const std::vector<JumpInfo> &jumps() const { return m_jumps; }
  std::vector<JumpInfo> jumps_of(BreakClass c) const;
  const JumpInfo &jump_at(double eta) const;
  const SpectralSets &spectral_sets() const { return m_sets; }
  const std::vector<MonotoneSegment> &segments() const { return m_segments; }

  //! Solve w(x) = y on a monotone segment; returns an unwrapped angle.
  double solve_level(const MonotoneSegment &seg, double y) const;

  FourierCoeffs fourier_coeffs(int M) const;
  //! Coefficients n = -K..K, index n + K.
  std::vector<std::complex<double>> coefficient_range(int K) const;
  std::complex<double> coefficient(int n) const;

  //! Symbol x -> w(-x).
  PiecewiseSymbol reflect() const;

  static constexpr int max_degree = 12;
  static constexpr double breakpoint_tol = 1e-12;
  static constexpr double removable_tol = 1e-10;

private:
  PiecewiseSymbol() = default;
  void finalize();
  int locate(double x, double &s) const;
  void classify();
  void compute_sets();
  void compute_segments();

  std::string m_name;
  std::vector<PolyPiece> m_pieces;
  std::vector<JumpInfo> m_jumps;
  SpectralSets m_sets;
  std::vector<MonotoneSegment> m_segments;
};

//! Seeded random symbol with up to `max_pieces` pieces of degree <= max_degree.
PiecewiseSymbol random_symbol(std::mt19937_64 &rng, int max_pieces = 5,
                              int max_degree = 4);

//! Coefficient sequence of an arbitrary (possibly constant) real function,
//! for the coefficient-level Toeplitz entry points.
FourierCoeffs constant_coeffs(double c, int M);

} // namespace toescat
