#include "ewfs/quantum.hpp"

#include <cmath>
#include <numbers>

namespace ewfs {

namespace {

constexpr double kQuantumTol = 1e-12;

}  // namespace

Observable Observable::from_angle(double theta) {
  theta = reduce_angle(theta);
  return Observable{std::sin(theta), std::cos(theta), 0.0};
}

Observable Observable::from_matrix(const Matrix2& m) {
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (std::abs(m[i][j] - std::conj(m[j][i])) > kQuantumTol) {
        throw ValidationError("observable is not Hermitian");
      }
    }
  }
  if (std::abs(m[0][0] + m[1][1]) > kQuantumTol) throw ValidationError("observable is not traceless");
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Complex sq = m[i][0] * m[0][j] + m[i][1] * m[1][j];
      if (std::abs(sq - Complex(i == j ? 1.0 : 0.0)) > kQuantumTol) {
        throw ValidationError("observable does not square to the identity");
      }
    }
  }
  return Observable{m[0][1].real(), m[0][0].real(), -m[0][1].imag()};
}

Matrix2 Observable::matrix() const {
  return {{{Complex(s), Complex(r, -t)}, {Complex(r, t), Complex(-s)}}};
}

Matrix2 Observable::projector(int outcome) const {
  const double sign = outcome == 0 ? 1.0 : -1.0;
  const Matrix2 o = matrix();
  Matrix2 p{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) p[i][j] = (Complex(i == j ? 1.0 : 0.0) + sign * o[i][j]) / 2.0;
  }
  return p;
}

void Observable::validate() const {
  if (!std::isfinite(r) || !std::isfinite(s) || !std::isfinite(t)) {
    throw ValidationError("observable has non-finite coefficients");
  }
  if (std::fabs(r * r + s * s + t * t - 1.0) > kQuantumTol) {
    throw ValidationError("observable does not square to the identity (r^2 + s^2 + t^2 != 1)");
  }
}

double reduce_angle(double theta) {
  if (!std::isfinite(theta)) throw ValidationError("angle is not finite");
  double r = std::fmod(theta, 2.0 * std::numbers::pi);
  if (r < 0) r += 2.0 * std::numbers::pi;
  return r;
}

void QuantumConfig::validate() const {
  if (parties < 1 || parties > 3) throw ValidationError("quantum configs support 1 to 3 parties");
  if (state.size() != (std::size_t{1} << parties)) {
    throw ValidationError("state has " + std::to_string(state.size()) + " amplitudes, expected " +
                          std::to_string(std::size_t{1} << parties));
  }
  double norm = 0.0;
  for (const auto& a : state) norm += std::norm(a);
  if (std::fabs(norm - 1.0) > kQuantumTol) throw ValidationError("state is not normalized");
  if (observables.size() != static_cast<std::size_t>(parties)) {
    throw ValidationError("need one observable list per party");
  }
  for (const auto& list : observables) {
    if (list.empty()) throw ValidationError("party without observables");
    for (const auto& o : list) o.validate();
  }
}

QuantumConfig chained_optimal_config(int m, BobAngles bob) {
  if (m < 2) throw ValidationError("chained configuration needs m >= 2");
  QuantumConfig c;
  c.parties = 2;
  c.state = {Complex(std::numbers::sqrt2 / 2), 0.0, 0.0, Complex(std::numbers::sqrt2 / 2)};
  c.observables.resize(2);
  const double pi = std::numbers::pi;
  for (int j = 0; j < m; ++j) {
    c.observables[0].push_back(Observable::from_angle(j * pi / m));
    const double denom = bob == BobAngles::half_step ? 2.0 * m : m;
    c.observables[1].push_back(Observable::from_angle((2 * j + 1) * pi / denom));
  }
  return c;
}

QuantumConfig ghz_mermin_config(const MerminLabels& labels) {
  QuantumConfig c;
  c.parties = 3;
  c.state.assign(8, Complex(0));
  c.state[0] = c.state[7] = Complex(std::numbers::sqrt2 / 2);
  const Observable x{1, 0, 0};
  const Observable y{0, 0, 1};
  const Observable minus_y{0, 0, -1};
  const Observable z{0, 1, 0};
  c.observables.assign(3, std::vector<Observable>(3, z));
  // On GHZ, <s(a) s(b) s(c)> = cos(a + b + c) for s(phi) = cos(phi) X + sin(phi) Y.
  c.observables[0][static_cast<std::size_t>(labels.input(0, 1))] = x;
  c.observables[0][static_cast<std::size_t>(labels.input(0, 3))] = y;
  c.observables[1][static_cast<std::size_t>(labels.input(1, 1))] = y;
  c.observables[1][static_cast<std::size_t>(labels.input(1, 3))] = x;
  c.observables[2][static_cast<std::size_t>(labels.input(2, 1))] = x;
  c.observables[2][static_cast<std::size_t>(labels.input(2, 2))] = minus_y;
  return c;
}

Behavior<double> behavior_from_config(const QuantumConfig& config, const ScenarioSpec& scenario) {
  config.validate();
  scenario.validate();
  if (scenario.parties != config.parties) {
    throw ValidationError("scenario has " + std::to_string(scenario.parties) + " parties, config has " +
                          std::to_string(config.parties));
  }
  for (const auto& list : config.observables) {
    if (list.size() != static_cast<std::size_t>(scenario.inputs)) {
      throw ValidationError("config has " + std::to_string(list.size()) + " settings for a party, scenario has " +
                            std::to_string(scenario.inputs) + " inputs");
    }
  }
  const int n = config.parties;
  const std::size_t dim = config.state.size();
  std::vector<double> table(scenario.behavior_size());
  std::vector<Complex> v(dim);
  for (std::size_t c = 0; c < scenario.context_count(); ++c) {
    const auto x = scenario.context_inputs(c);
    for (std::size_t o = 0; o < scenario.outcome_count(); ++o) {
      v = config.state;
      for (int p = 0; p < n; ++p) {
        const Matrix2 proj =
            config.observables[static_cast<std::size_t>(p)][static_cast<std::size_t>(x[static_cast<std::size_t>(p)])]
                .projector(scenario.outcome_of(o, p));
        const std::size_t bit = std::size_t{1} << (n - 1 - p);
        for (std::size_t i = 0; i < dim; ++i) {
          if (i & bit) continue;
          const Complex v0 = v[i];
          const Complex v1 = v[i | bit];
          v[i] = proj[0][0] * v0 + proj[0][1] * v1;
          v[i | bit] = proj[1][0] * v0 + proj[1][1] * v1;
        }
      }
      double prob = 0.0;
      for (const auto& a : v) prob += std::norm(a);
      table[c * scenario.outcome_count() + o] = prob;
    }
  }
  return Behavior<double>(scenario, std::move(table));
}

double chained_quantum_value(int m) { return 2.0 * m * std::cos(std::numbers::pi / (2.0 * m)); }

}  // namespace ewfs
