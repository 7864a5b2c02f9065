#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qspectral/spectrum.hpp"

namespace qspectral {

enum class Backend { dense, ideal };

Backend parse_backend(const std::string& name);
std::string backend_name(Backend b);

/// Register sizes for the clustering circuit: a t-qubit phase register,
/// an n-qubit eigenstate register and an n-qubit ancilla register, plus
/// t' counting qubits.
struct RegisterLayout {
    int t = 1;        // phase register
    int n = 1;        // eigenstate register (N = 2^n)
    int t_prime = 1;  // counting register
    double epsilon0 = 0.25;  // phase-estimation failure probability target

    int n_states() const { return 1 << n; }
    std::uint64_t phase_levels() const { return std::uint64_t{1} << t; }
    int total_qubits() const { return t + 2 * n; }
};

/// Default layout: t = n + ceil(2 + log2(1/(2*epsilon0))); t' sized so the
/// counting uncertainty satisfies |dk| < 0.5 with k_max = N/4.
RegisterLayout default_layout(int n, double epsilon0 = 0.25);

int default_t(int n, double epsilon0 = 0.25);
int default_t_prime(int n_states, int k_max);

/// Maximum dense-backend qubit count; QSPECTRAL_QUBIT_CAP overrides.
int dense_qubit_cap();

/// Phase-register state triple of the ideal backend.
struct IdealTriple {
    std::uint64_t phase = 0;  // t-bit estimate
    int eigen_index = 0;
    std::complex<double> amp;
};

/// Register-structured circuit state. The dense backend holds the full
/// amplitude vector over t+2n qubits with index order (phase, eigenstate,
/// ancilla); the ideal backend lists (phase, eigenindex, amplitude)
/// triples in the Laplacian eigenbasis, with exact t-bit phase rounding.
struct QuantumState {
    Backend backend = Backend::ideal;
    RegisterLayout layout;
    Eigen::VectorXcd dense;  // length 2^(t+2n), dense backend only
    std::vector<IdealTriple> triples;  // ideal backend, sorted by key
    // Eigenbasis the ideal triples refer to; null before QPE (the uniform
    // state is basis-independent per the maximally-entangled identity).
    std::shared_ptr<const Spectrum> basis;

    double norm() const;
};

/// Threshold classifier on t-bit phase estimates.
struct ThresholdOracle {
    double lambda_threshold = 0.0;  // in (0, 1]
    int t = 1;

    /// 1 iff x / 2^t < lambda_threshold (strict).
    bool marked(std::uint64_t x) const;
};

int classical_f(std::uint64_t x, const ThresholdOracle& oracle);

struct DensityMatrix {
    Eigen::MatrixXcd rho;  // N x N, Hermitian, unit trace

    int size() const { return static_cast<int>(rho.rows()); }
};

/// Step 1: |0>^t (x) (1/sqrt(N)) sum_i |i>|i>.
QuantumState prepare_entangled_state(const RegisterLayout& layout,
                                     Backend backend);

/// Step 2: phase estimation of U = e^{2*pi*i*L} on the rescaled Laplacian.
/// Dense: controlled powers of U (exact, via eigendecomposition) followed
/// by the inverse QFT on the phase register. Ideal: each triple's phase
/// becomes round(lambda * 2^t), ties rounding up.
QuantumState apply_qpe(const QuantumState& state, const Eigen::MatrixXd& rescaled,
                       const RegisterLayout& layout);

/// One Grover step G = (2|psi_pe><psi_pe| - I) O_f.
QuantumState grover_iteration(const QuantumState& state,
                              const ThresholdOracle& oracle,
                              const QuantumState& psi_pe);

/// r = ceil((pi/4) * sqrt(N/k)).
int grover_iteration_count(int k, int n_states);

QuantumState grover_run(const QuantumState& psi_pe, const ThresholdOracle& oracle,
                        int r);

/// theta = 2 * arcsin(sqrt(k/N)).
double grover_angle(int k, int n_states);

/// Probability mass on basis states whose phase value the oracle marks.
double marked_probability(const QuantumState& state, const ThresholdOracle& oracle);

/// Partial trace over phase and ancilla registers.
DensityMatrix reduced_density(const QuantumState& state);

struct CountingResult {
    int k_estimate = 0;
    double theta_estimate = 0.0;
};

/// Phase estimation of G on t_prime qubits. The dense backend evaluates
/// the exact counting-register distribution (G restricted to its 2-D
/// invariant subspace) and reads off the modal outcome; the ideal backend
/// discretizes the exact angle. Estimates in [pi/2, 3pi/2] are ambiguous
/// and throw, prompting a larger t_prime.
CountingResult quantum_counting(const QuantumState& psi_pe,
                                const ThresholdOracle& oracle, int t_prime,
                                Backend backend);

/// Debug dumps: ideal as "phase,eigenindex,re,im" lines; dense as a
/// little-endian (t, n) header followed by raw complex doubles.
void dump_state(const QuantumState& state, const std::string& path);

}  // namespace qspectral
