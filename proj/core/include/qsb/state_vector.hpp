#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qsb/errors.hpp"
#include "qsb/oracle_table.hpp"
#include "qsb/rng.hpp"

namespace qsb {

using Amplitude = std::complex<double>;

/// Question register of n_question qubits plus an answer register of 0, 1, or
/// n_question qubits. Basis index layout puts the question word in the high
/// bits: j = a * 2^n_answer + b.
struct RegisterShape {
  int n_question = 0;
  int n_answer = 0;

  std::uint64_t question_words() const {
    return std::uint64_t{1} << n_question;
  }
  std::uint64_t answer_states() const { return std::uint64_t{1} << n_answer; }
  std::uint64_t dimension() const {
    return std::uint64_t{1} << (n_question + n_answer);
  }
  std::uint64_t question_of(std::uint64_t index) const {
    return index >> n_answer;
  }

  friend bool operator==(const RegisterShape&, const RegisterShape&) = default;
};

/// Validated shape. Throws ShapeError for invalid register combinations and
/// CapacityError when the dense state would exceed the simulation limits
/// (n_question <= 22 without an answer register, <= 20 with a 1-qubit answer,
/// <= 11 with a full-width answer; QSB_MAX_QUBITS overrides with a total-qubit
/// cap).
RegisterShape make_shape(int n_question, int n_answer);

/// Dense complex state over the (question (+) answer) basis. Exclusively
/// owned by one trial; operations mutate in place.
struct StateVector {
  RegisterShape shape;
  std::vector<Amplitude> amps;

  std::uint64_t dimension() const { return amps.size(); }
};

/// Per-word query masses: entry a is the probability that observing the
/// question register yields word a.
struct QueryMassVector {
  std::vector<double> masses;

  double sum() const;
};

StateVector make_basis_state(const RegisterShape& shape, std::uint64_t index);

/// Hadamard on every question qubit; the answer register is untouched.
void apply_walsh_hadamard(StateVector& state);

/// Sign flip on basis states whose question word is all-zero.
void apply_r0(StateVector& state);

/// Inversion about the question-register mean: -W R0 W.
void apply_diffusion(StateVector& state);

/// Phase oracle: amplitude at question word x picks up (-1)^f(x).
void apply_phase_oracle(StateVector& state, const OracleTable& f,
                        QueryCounter* counter = nullptr);

/// Query transform |a,b> -> |a, b xor phi(a)>.
void apply_bitflip_oracle(StateVector& state, const OracleTable& phi,
                          QueryCounter* counter = nullptr);

QueryMassVector query_mass(const StateVector& state);

/// Samples a basis index with probability |amplitude|^2. Deterministic given
/// the rng state. Throws InvariantViolation if the norm is off by > 1e-6.
std::uint64_t measure(const StateVector& state, Rng& rng);

double l2_norm(const StateVector& state);
double l2_distance(const StateVector& x, const StateVector& y);

/// Rescales to unit norm only when |norm - 1| exceeds tol, and counts how
/// often that happens. The counter is expected to stay at zero; a nonzero
/// value flags precision loss worth investigating.
void renormalize_if_drifted(StateVector& state, double tol = 1e-9);
std::uint64_t renormalization_count();
void reset_renormalization_count();

}  // namespace qsb
