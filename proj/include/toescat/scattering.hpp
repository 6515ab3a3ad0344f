#pragma once
#include "toescat/classifier.hpp"
#include "toescat/discrete_spaces.hpp"
#include "toescat/hardy_space.hpp"
#include "toescat/linalg.hpp"
#include "toescat/model_channel.hpp"
#include "toescat/toeplitz.hpp"
#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace toescat {

//==============================================================================
//! Finite-time wave-operator approximant W(t)f = e^{iBt} J e^{-iAt} f.
struct WaveApprox {
  enum class Pair {
    Thick, // (T, multiplication, P)
    Jump   // (T, jump model, identity)
  };
  Pair pair{Pair::Thick};
  int sign{1};
  std::vector<double> t_list{};
  std::vector<Eigen::VectorXcd> vectors{};
  std::vector<double> norms{};
  double f_norm{0.0};
  //! sup over pairs of ||W(t_j)f - W(t_i)f||.
  double cauchy{0.0};

  double relative_cauchy() const { return cauchy / f_norm; }
};

//! Times are |t| values; sign -1 evaluates at -|t|.
WaveApprox wave_approx_thick(const PiecewiseSymbol &symbol,
                             const DiscreteSpaces &spaces,
                             const Eigen::VectorXcd &f, int sign,
                             const std::vector<double> &t_list);
WaveApprox wave_approx_thick(const PiecewiseSymbol &symbol,
                             const DiscreteSpaces &spaces,
                             const TruncatedToeplitz &T,
                             const Eigen::VectorXcd &f, int sign,
                             const std::vector<double> &t_list);

//! ||P e^{-i w t} f||^2 at each t (all nonnegative modes of the grid).
std::vector<double> hardy_mass_profile(const PiecewiseSymbol &symbol,
                                       const DiscreteSpaces &spaces,
                                       const Eigen::VectorXcd &f,
                                       const std::vector<double> &t_list);

//! Minus the least-squares slope of log y against log t.
double fitted_decay_exponent(const std::vector<double> &t,
                             const std::vector<double> &y);

//==============================================================================
struct WorkspaceConfig {
  int M{256};
  //! Largest |t| the space must resolve.
  double t_reach{80.0};
  //! Model arc length.
  double eps{pi / 2};
  double base_depth{100.0};
  double rel_tol{1e-10};
  int far_panels{0};
};

//! Augmented Hardy space for a symbol together with the compressions of the
//! symbol and of every jump model, with their eigensystems. Operator index
//! -1 is T itself, k >= 0 the model of jump k.
class ChannelWorkspace {
public:
  ChannelWorkspace(const PiecewiseSymbol &symbol, const WorkspaceConfig &cfg);

  const PiecewiseSymbol &symbol() const { return m_symbol; }
  const WorkspaceConfig &config() const { return m_cfg; }
  const AugmentedHardySpace &space() const { return *m_space; }
  const std::vector<JumpModelSymbol> &jumps() const { return m_jumps; }
  //! Index of the jump model at eta, or -1.
  int jump_index(double eta) const;

  const HermitianEigen &eigen(int op) const;
  //! e^{-i A t} applied to each column.
  Eigen::MatrixXcd evolve(int op, const Eigen::MatrixXcd &c, double t) const;
  //! Spectral projection onto the open band.
  Eigen::MatrixXcd filter(int op, const Eigen::MatrixXcd &c, Interval band) const;
  //! Smooth window exp(1 - 1/(1 - u^2)) of the operator over the band.
  Eigen::MatrixXcd smooth_filter(int op, const Eigen::MatrixXcd &c,
                                 Interval band) const;

  //! Projection of e^{-i w t} g onto the space.
  Eigen::VectorXcd thick_state(const std::function<std::complex<double>(double)> &g,
                               double t) const;
  //! Projection of the model state of jump k with density g at time t.
  Eigen::VectorXcd model_state(int k, const SpectralDensity &g, double t) const;
  double norm(const Eigen::VectorXcd &c) const { return c.norm(); }

private:
  PiecewiseSymbol m_symbol;
  WorkspaceConfig m_cfg;
  std::vector<JumpModelSymbol> m_jumps;
  std::unique_ptr<AugmentedHardySpace> m_space;
  std::vector<HermitianEigen> m_eigen; // slot 0 is T
};

//! Jump-channel approximant W(t)f = e^{iTt} e^{-i T_k t} f for the model
//! state f synthesized from g on jump k.
WaveApprox wave_approx_jump(const ChannelWorkspace &ws, int jump,
                            const SpectralDensity &g, int sign,
                            const std::vector<double> &t_list);

//==============================================================================
struct CookReport {
  std::vector<double> t{};
  std::vector<double> g{};
  double integral{0.0};
  //! Infinite when the integrand vanishes on the tail.
  double tail_exponent{0.0};
};

//! g(t) = ||(w - w_k) e^{-i T_k t} f|| for the model state f of density g,
//! on log-spaced times in [1, t_max]; the tail fit uses t >= t_fit.
CookReport cook_diagnostic(const PiecewiseSymbol &symbol,
                           const JumpModelSymbol &model,
                           const SpectralDensity &g, double t_max = 100.0,
                           int samples = 25, double t_fit = 10.0);

//==============================================================================
//! Ingredient of a channel: either a boundary function evolved by the
//! multiplication operator and projected, or a model state of a jump.
struct ChannelState {
  enum class Kind { Thick, Jump };
  Kind kind{Kind::Thick};
  std::function<std::complex<double>(double)> f{};
  JumpModelSymbol model{};
  SpectralDensity g{};

  static ChannelState thick(std::function<std::complex<double>(double)> f) {
    ChannelState s;
    s.kind = Kind::Thick;
    s.f = std::move(f);
    return s;
  }
  static ChannelState jump(const JumpModelSymbol &m, const SpectralDensity &g) {
    ChannelState s;
    s.kind = Kind::Jump;
    s.model = m;
    s.g = g;
    return s;
  }
};

//! Normalized overlap |<a(t), b(t)>| / (||a(t)|| ||b(t)||).
double channel_orthogonality(const PiecewiseSymbol &symbol,
                             const ChannelState &a, const ChannelState &b,
                             double t);

//==============================================================================
struct ChannelMass {
  std::string kind; // "thick" or "jump"
  double eta{0.0};  // jump point, or arc midpoint for thick channels
  Arc arc{};        // thick channels only
  int vectors{0};
  double mass{0.0};
};

struct ChannelDecomposition {
  Interval band{};
  int sign{1};
  double t_star{0.0};
  int multiplicity{0};
  int frame_count{0};
  double f_norm2{0.0};
  std::vector<ChannelMass> channels{};
  double defect{0.0};
  //! Largest change of a channel mass or the defect between 0.75 t* and t*;
  //! negative when not computed.
  double cauchy{-1.0};

  double thick_mass() const;
  double jump_mass() const;
};

struct CompletenessConfig {
  double t_star{80.0};
  unsigned seed{7};
  int seed_degree{8};
  double gs_tol{1e-6};
  bool with_cauchy{false};
};

//! Smooth spectral window of T over the band applied to a seeded random
//! trigonometric polynomial, normalized.
Eigen::VectorXcd band_state(const ChannelWorkspace &ws, Interval band,
                            unsigned seed, int degree = 8);

//! Channel masses of f at sign * t*. Throws FrameDeficient when fewer
//! channels survive orthonormalization than the multiplicity of the band.
ChannelDecomposition completeness_defect(const ChannelWorkspace &ws,
                                         Interval band, int sign,
                                         const Eigen::VectorXcd &f,
                                         const CompletenessConfig &cfg);
ChannelDecomposition completeness_defect(const ChannelWorkspace &ws,
                                         Interval band, int sign,
                                         const CompletenessConfig &cfg);

struct TwoSidedReport {
  ChannelDecomposition forward{};
  ChannelDecomposition backward{};
  std::string dominant_forward;  // "thick" or "jump"
  std::string dominant_backward;
};

TwoSidedReport two_sided_report(const ChannelWorkspace &ws, Interval band,
                                const CompletenessConfig &cfg);

} // namespace toescat
