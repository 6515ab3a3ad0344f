#pragma once
#include "toescat/symbol.hpp"
#include "toescat/toeplitz.hpp"
#include <Eigen/Dense>
#include <memory>

namespace toescat {

//! Uniform circle grid theta_j = 2 pi j / N with a unitary mode <-> grid pair.
//! Grid states carry the L2(dm) norm (1/N) sum |f_j|^2; mode states the
//! plain l2 norm. Hardy states are the modes 0..M.
class DiscreteSpaces {
public:
  //! N = 0 picks the smallest power of two >= 8(M+1).
  explicit DiscreteSpaces(int M, int N = 0);
  ~DiscreteSpaces();
  DiscreteSpaces(const DiscreteSpaces &) = delete;
  DiscreteSpaces &operator=(const DiscreteSpaces &) = delete;

  int M() const { return m_M; }
  int N() const { return m_N; }
  double angle(int j) const { return two_pi * j / m_N; }
  //! Mode index of FFT slot k.
  int mode_of_slot(int k) const { return k < m_N / 2 ? k : k - m_N; }

  //! c_n = (1/N) sum_j f_j e^{-i n theta_j}, FFT slot order.
  Eigen::VectorXcd to_modes(const Eigen::VectorXcd &grid) const;
  Eigen::VectorXcd to_grid(const Eigen::VectorXcd &modes) const;

  //! Modes 0..M of a grid state, and back.
  Eigen::VectorXcd hardy_coeffs(const Eigen::VectorXcd &grid) const;
  Eigen::VectorXcd from_hardy(const Eigen::VectorXcd &a) const;
  //! Orthogonal projection onto modes 0..M, in grid space.
  Eigen::VectorXcd project(const Eigen::VectorXcd &grid) const;
  //! Squared norm of all nonnegative modes (the full Hardy projection).
  double hardy_norm2_full(const Eigen::VectorXcd &grid) const;

  double norm(const Eigen::VectorXcd &grid) const;
  Eigen::VectorXd symbol_values(const PiecewiseSymbol &symbol) const;
  //! Indicator of {sign * w' < 0} on the grid.
  Eigen::VectorXd mask(const PiecewiseSymbol &symbol, int sign) const;

private:
  struct Fft;
  int m_M, m_N;
  std::unique_ptr<Fft> m_fft;
};

DiscreteSpaces make_spaces(int M, int N = 0);

//! Pointwise exp(-i w(theta_j) t).
Eigen::VectorXcd evolve_mult(const PiecewiseSymbol &symbol,
                             const DiscreteSpaces &spaces,
                             const Eigen::VectorXcd &grid, double t);
Eigen::VectorXcd evolve_toeplitz(const TruncatedToeplitz &T,
                                 const Eigen::VectorXcd &f, double t);

} // namespace toescat
