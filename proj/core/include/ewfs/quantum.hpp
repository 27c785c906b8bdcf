#pragma once

#include <array>
#include <complex>
#include <vector>

#include "ewfs/behavior.hpp"
#include "ewfs/inequality.hpp"

namespace ewfs {

using Complex = std::complex<double>;
using Matrix2 = std::array<std::array<Complex, 2>, 2>;

/// Binary-outcome qubit observable r*X + t*Y + s*Z with r^2 + s^2 + t^2 = 1.
/// Outcome 0 is the +1 eigenvalue.
struct Observable {
  double r = 0.0;  // X coefficient
  double s = 1.0;  // Z coefficient
  double t = 0.0;  // Y coefficient

  /// sin(theta) X + cos(theta) Z.
  static Observable from_angle(double theta);
  /// Validates that m is Hermitian, traceless and squares to the identity
  /// (all within 1e-12).
  static Observable from_matrix(const Matrix2& m);

  Matrix2 matrix() const;
  /// (I + sign * O) / 2 with sign = +1 for outcome 0.
  Matrix2 projector(int outcome) const;
  /// Throws ValidationError unless the Bloch vector has unit length.
  void validate() const;
};

/// Reduces an angle into [0, 2 pi).
double reduce_angle(double theta);

/// Pure state on `parties` qubits (first party is the most significant
/// qubit) and one observable per party per input.
struct QuantumConfig {
  int parties = 2;
  std::vector<Complex> state;
  std::vector<std::vector<Observable>> observables;  // [party][input]

  /// Norm 1 and valid observables, within 1e-12.
  void validate() const;
};

/// Bob's settings for the chained family. `half_step` uses (2j+1) pi / (2m),
/// which attains 2m cos(pi / 2m); `as_printed` uses (2j+1) pi / m.
enum class BobAngles { half_step, as_printed };

/// (|00> + |11>)/sqrt 2 with Alice at angles j pi / m and Bob per `bob`.
QuantumConfig chained_optimal_config(int m, BobAngles bob = BobAngles::half_step);

/// (|000> + |111>)/sqrt 2 with X/Y settings reaching M = 4 under `labels`.
/// Inputs not used by M get Z.
QuantumConfig ghz_mermin_config(const MerminLabels& labels = MerminLabels::shifted());

/// Born-rule table p(o | x) = || (Pi_{o_1}^{x_1} (x) ... ) psi ||^2.
/// The scenario's party count and inputs must match the config.
Behavior<double> behavior_from_config(const QuantumConfig& config, const ScenarioSpec& scenario);

/// 2m cos(pi / 2m).
double chained_quantum_value(int m);

}  // namespace ewfs
