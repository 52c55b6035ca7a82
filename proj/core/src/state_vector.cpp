#include "qsb/state_vector.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>

namespace qsb {

namespace {

std::atomic<std::uint64_t> g_renorm_count{0};

// Total-qubit cap from QSB_MAX_QUBITS, if set. Read once.
int env_qubit_cap() {
  static const int cap = [] {
    const char* s = std::getenv("QSB_MAX_QUBITS");
    if (s == nullptr) return -1;
    return std::atoi(s);
  }();
  return cap;
}

constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;

}  // namespace

RegisterShape make_shape(int n_question, int n_answer) {
  if (n_question < 1) {
    throw ShapeError("question register needs at least one qubit");
  }
  if (n_answer != 0 && n_answer != 1 && n_answer != n_question) {
    throw ShapeError("answer register must hold 0, 1, or n_question qubits");
  }
  const int cap = env_qubit_cap();
  if (cap >= 0) {
    if (n_question + n_answer > cap) {
      throw CapacityError("register of " +
                          std::to_string(n_question + n_answer) +
                          " qubits exceeds QSB_MAX_QUBITS=" +
                          std::to_string(cap));
    }
  } else {
    const int limit = n_answer == 0 ? 22 : (n_answer == 1 ? 20 : 11);
    if (n_question > limit) {
      throw CapacityError("n_question=" + std::to_string(n_question) +
                          " with n_answer=" + std::to_string(n_answer) +
                          " exceeds the dense-state limit of " +
                          std::to_string(limit) + " question qubits");
    }
  }
  return RegisterShape{n_question, n_answer};
}

double QueryMassVector::sum() const {
  double s = 0.0;
  for (double m : masses) s += m;
  return s;
}

StateVector make_basis_state(const RegisterShape& shape, std::uint64_t index) {
  const std::uint64_t dim = shape.dimension();
  if (index >= dim) {
    throw DomainError("basis index " + std::to_string(index) +
                      " out of range for dimension " + std::to_string(dim));
  }
  StateVector state{shape, std::vector<Amplitude>(dim)};
  state.amps[index] = Amplitude{1.0, 0.0};
  return state;
}

void apply_walsh_hadamard(StateVector& state) {
  auto& a = state.amps;
  const std::uint64_t dim = a.size();
  const int offset = state.shape.n_answer;
  for (int q = 0; q < state.shape.n_question; ++q) {
    const std::uint64_t half = std::uint64_t{1} << (q + offset);
    const std::uint64_t stride = half << 1;
    for (std::uint64_t base = 0; base < dim; base += stride) {
      for (std::uint64_t i = base; i < base + half; ++i) {
        const Amplitude x = a[i];
        const Amplitude y = a[i + half];
        a[i] = (x + y) * kInvSqrt2;
        a[i + half] = (x - y) * kInvSqrt2;
      }
    }
  }
}

void apply_r0(StateVector& state) {
  const std::uint64_t block = state.shape.answer_states();
  for (std::uint64_t j = 0; j < block; ++j) {
    state.amps[j] = -state.amps[j];
  }
}

void apply_diffusion(StateVector& state) {
  // -W R0 W acts on the question register as amplitude -> 2*mean - amplitude,
  // independently for each answer value.
  auto& a = state.amps;
  const std::uint64_t block = state.shape.answer_states();
  const std::uint64_t mask = block - 1;
  const double inv_words =
      1.0 / static_cast<double>(state.shape.question_words());
  if (block == 1) {
    Amplitude m{0.0, 0.0};
    for (const Amplitude& amp : a) m += amp;
    m *= 2.0 * inv_words;
    for (Amplitude& amp : a) amp = m - amp;
    return;
  }
  std::vector<Amplitude> mean(block, Amplitude{0.0, 0.0});
  for (std::uint64_t j = 0; j < a.size(); ++j) {
    mean[j & mask] += a[j];
  }
  for (auto& m : mean) m *= 2.0 * inv_words;
  for (std::uint64_t j = 0; j < a.size(); ++j) {
    a[j] = mean[j & mask] - a[j];
  }
}

void apply_phase_oracle(StateVector& state, const OracleTable& f,
                        QueryCounter* counter) {
  if (f.kind != OracleKind::boolean ||
      f.domain_size() != state.shape.question_words()) {
    throw ShapeError("phase oracle needs a Boolean table over the question register");
  }
  if (counter != nullptr) ++counter->quantum;
  auto& a = state.amps;
  const std::uint64_t block = state.shape.answer_states();
  for (std::uint64_t word = 0; word < f.domain_size(); ++word) {
    if (f.values[word] == 0) continue;
    const std::uint64_t base = word * block;
    for (std::uint64_t b = 0; b < block; ++b) {
      a[base + b] = -a[base + b];
    }
  }
}

void apply_bitflip_oracle(StateVector& state, const OracleTable& phi,
                          QueryCounter* counter) {
  if (phi.domain_size() != state.shape.question_words() ||
      phi.answer_width() != state.shape.n_answer) {
    throw ShapeError("bitflip oracle needs matching question and answer widths");
  }
  if (counter != nullptr) ++counter->quantum;
  auto& a = state.amps;
  const std::uint64_t block = state.shape.answer_states();
  for (std::uint64_t word = 0; word < phi.domain_size(); ++word) {
    const std::uint64_t v = phi.values[word];
    if (v == 0) continue;
    const std::uint64_t base = word * block;
    for (std::uint64_t b = 0; b < block; ++b) {
      const std::uint64_t partner = b ^ v;
      if (b < partner) std::swap(a[base + b], a[base + partner]);
    }
  }
}

QueryMassVector query_mass(const StateVector& state) {
  const std::uint64_t words = state.shape.question_words();
  const std::uint64_t block = state.shape.answer_states();
  QueryMassVector out;
  out.masses.assign(words, 0.0);
  for (std::uint64_t word = 0; word < words; ++word) {
    double m = 0.0;
    const std::uint64_t base = word * block;
    for (std::uint64_t b = 0; b < block; ++b) {
      m += std::norm(state.amps[base + b]);
    }
    out.masses[word] = m;
  }
  return out;
}

std::uint64_t measure(const StateVector& state, Rng& rng) {
  double total = 0.0;
  for (const Amplitude& amp : state.amps) total += std::norm(amp);
  if (std::abs(std::sqrt(total) - 1.0) > 1e-6) {
    throw InvariantViolation("measurement of an un-normalized state (norm " +
                             std::to_string(std::sqrt(total)) + ")");
  }
  const double u = rng.uniform_double() * total;
  double acc = 0.0;
  for (std::uint64_t j = 0; j < state.amps.size(); ++j) {
    acc += std::norm(state.amps[j]);
    if (u < acc) return j;
  }
  return state.amps.size() - 1;
}

double l2_norm(const StateVector& state) {
  double total = 0.0;
  for (const Amplitude& amp : state.amps) total += std::norm(amp);
  return std::sqrt(total);
}

double l2_distance(const StateVector& x, const StateVector& y) {
  if (!(x.shape == y.shape)) {
    throw ShapeError("distance needs states of identical shape");
  }
  double total = 0.0;
  for (std::uint64_t j = 0; j < x.amps.size(); ++j) {
    total += std::norm(x.amps[j] - y.amps[j]);
  }
  return std::sqrt(total);
}

void renormalize_if_drifted(StateVector& state, double tol) {
  const double norm = l2_norm(state);
  if (std::abs(norm - 1.0) <= tol) return;
  g_renorm_count.fetch_add(1, std::memory_order_relaxed);
  const double inv = 1.0 / norm;
  for (Amplitude& amp : state.amps) amp *= inv;
}

std::uint64_t renormalization_count() {
  return g_renorm_count.load(std::memory_order_relaxed);
}

void reset_renormalization_count() {
  g_renorm_count.store(0, std::memory_order_relaxed);
}

}  // namespace qsb
