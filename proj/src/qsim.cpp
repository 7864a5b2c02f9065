#include "qspectral/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <stdexcept>

namespace qspectral {

namespace {

constexpr double kPi = 3.14159265358979323846;
using Complex = std::complex<double>;

std::uint64_t phase_of_index(std::uint64_t idx, int n) { return idx >> (2 * n); }

std::uint64_t make_index(std::uint64_t phase, std::uint64_t eig,
                         std::uint64_t anc, int n) {
    return (phase << (2 * n)) | (eig << n) | anc;
}

std::map<std::pair<std::uint64_t, int>, Complex> triple_map(
    const std::vector<IdealTriple>& triples) {
    std::map<std::pair<std::uint64_t, int>, Complex> m;
    for (const auto& tr : triples) m[{tr.phase, tr.eigen_index}] = tr.amp;
    return m;
}

// QPE kernel: |(1/T) sum_p exp(2 pi i p (phi - x/T))|^2.
double phase_kernel(double phi, std::uint64_t x, std::uint64_t levels) {
    const double delta = phi - double(x) / double(levels);
    const double num = std::sin(kPi * double(levels) * delta);
    const double den = std::sin(kPi * delta);
    if (std::abs(den) < 1e-15) return 1.0;
    const double amp = num / (double(levels) * den);
    return amp * amp;
}

}  // namespace

Backend parse_backend(const std::string& name) {
    if (name == "dense") return Backend::dense;
    if (name == "ideal") return Backend::ideal;
    throw std::invalid_argument("unknown backend: " + name);
}

std::string backend_name(Backend b) {
    return b == Backend::dense ? "dense" : "ideal";
}

int default_t(int n, double epsilon0) {
    if (epsilon0 <= 0.0 || epsilon0 >= 1.0)
        throw std::invalid_argument("default_t: epsilon0 must be in (0,1)");
    const double extra = 2.0 + std::log2(1.0 / (2.0 * epsilon0));
    return n + static_cast<int>(std::ceil(extra - 1e-12));
}

int default_t_prime(int n_states, int k_max) {
    for (int tp = 1; tp <= 30; ++tp) {
        const double levels = std::ldexp(1.0, tp);
        const double err = 2.0 * kPi * std::sqrt(double(k_max) * n_states) / levels +
                           kPi * kPi * n_states / (levels * levels);
        if (err < 0.5) return tp;
    }
    throw std::runtime_error("default_t_prime: no t' <= 30 satisfies the bound");
}

RegisterLayout default_layout(int n, double epsilon0) {
    RegisterLayout layout;
    layout.n = n;
    layout.epsilon0 = epsilon0;
    layout.t = default_t(n, epsilon0);
    layout.t_prime = default_t_prime(1 << n, std::max(1, (1 << n) / 4));
    return layout;
}

int dense_qubit_cap() {
    if (const char* env = std::getenv("QSPECTRAL_QUBIT_CAP")) {
        const int cap = std::atoi(env);
        if (cap > 0) return cap;
    }
    return 26;
}

double QuantumState::norm() const {
    if (backend == Backend::dense) return dense.norm();
    double sum = 0.0;
    for (const auto& tr : triples) sum += std::norm(tr.amp);
    return std::sqrt(sum);
}

bool ThresholdOracle::marked(std::uint64_t x) const {
    return double(x) / std::ldexp(1.0, t) < lambda_threshold;
}

int classical_f(std::uint64_t x, const ThresholdOracle& oracle) {
    return oracle.marked(x) ? 1 : 0;
}

QuantumState prepare_entangled_state(const RegisterLayout& layout,
                                     Backend backend) {
    if (layout.t < 1 || layout.n < 1)
        throw std::invalid_argument("prepare_entangled_state: invalid layout");
    QuantumState state;
    state.backend = backend;
    state.layout = layout;
    const int n_states = layout.n_states();
    const double amp = 1.0 / std::sqrt(double(n_states));
    if (backend == Backend::dense) {
        if (layout.total_qubits() > dense_qubit_cap())
            throw std::runtime_error(
                "dense backend refused: " + std::to_string(layout.total_qubits()) +
                " qubits exceed cap " + std::to_string(dense_qubit_cap()) +
                " (set QSPECTRAL_QUBIT_CAP to override)");
        state.dense = Eigen::VectorXcd::Zero(std::int64_t{1} << layout.total_qubits());
        for (int i = 0; i < n_states; ++i)
            state.dense(make_index(0, i, i, layout.n)) = amp;
    } else {
        state.triples.reserve(n_states);
        for (int i = 0; i < n_states; ++i)
            state.triples.push_back({0, i, Complex(amp, 0.0)});
    }
    return state;
}

QuantumState apply_qpe(const QuantumState& state, const Eigen::MatrixXd& rescaled,
                       const RegisterLayout& layout) {
    auto spectrum = std::make_shared<Spectrum>(eigen_decompose(rescaled));
    if (spectrum->values.maxCoeff() >= 1.0)
        throw std::invalid_argument(
            "apply_qpe: eigenvalue >= 1, Laplacian not rescaled");
    if (spectrum->values.minCoeff() < -1e-10)
        throw std::invalid_argument("apply_qpe: negative eigenvalue");

    const int n = layout.n;
    const int n_states = layout.n_states();
    if (spectrum->size() != n_states)
        throw std::invalid_argument("apply_qpe: matrix size does not match layout");
    const std::uint64_t levels = layout.phase_levels();

    QuantumState out;
    out.backend = state.backend;
    out.layout = layout;

    if (state.backend == Backend::ideal) {
        out.basis = spectrum;
        out.triples.reserve(state.triples.size());
        for (const auto& tr : state.triples) {
            // Nearest t-bit value, ties rounding up; the register wraps.
            const double lambda = spectrum->values(tr.eigen_index);
            const std::uint64_t phase =
                static_cast<std::uint64_t>(std::floor(lambda * levels + 0.5)) %
                levels;
            out.triples.push_back({phase, tr.eigen_index, tr.amp});
        }
        return out;
    }

    // Dense: the circuit (Hadamards + controlled powers of U + inverse
    // QFT) applied exactly, working in the eigenbasis of L for the
    // controlled-U action.
    const Eigen::MatrixXd& basis = spectrum->vectors;
    const std::int64_t dim = state.dense.size();
    out.dense = Eigen::VectorXcd::Zero(dim);

    // Input block at phase = 0, rotated into the eigenbasis on the
    // eigenstate register: phi(j, a).
    Eigen::MatrixXcd phi = Eigen::MatrixXcd::Zero(n_states, n_states);
    for (int e = 0; e < n_states; ++e)
        for (int a = 0; a < n_states; ++a) {
            const Complex amp = state.dense(make_index(0, e, a, n));
            if (amp != Complex(0.0, 0.0))
                for (int j = 0; j < n_states; ++j) phi(j, a) += basis(e, j) * amp;
        }

    // Kernel K(x, j): amplitude the inverse QFT leaves on phase value x
    // for eigenvalue lambda_j.
    Eigen::MatrixXcd kernel(levels, n_states);
    for (std::uint64_t x = 0; x < levels; ++x)
        for (int j = 0; j < n_states; ++j) {
            Complex sum(0.0, 0.0);
            const double lambda = spectrum->values(j);
            for (std::uint64_t p = 0; p < levels; ++p) {
                const double angle =
                    2.0 * kPi * double(p) * (lambda - double(x) / double(levels));
                sum += Complex(std::cos(angle), std::sin(angle));
            }
            kernel(x, j) = sum / double(levels);
        }

    Eigen::MatrixXcd block(n_states, n_states);
    for (std::uint64_t x = 0; x < levels; ++x) {
        for (int j = 0; j < n_states; ++j) block.row(j) = kernel(x, j) * phi.row(j);
        for (int e = 0; e < n_states; ++e)
            for (int a = 0; a < n_states; ++a) {
                Complex amp(0.0, 0.0);
                for (int j = 0; j < n_states; ++j) amp += basis(e, j) * block(j, a);
                out.dense(make_index(x, e, a, n)) = amp;
            }
    }
    return out;
}

QuantumState grover_iteration(const QuantumState& state,
                              const ThresholdOracle& oracle,
                              const QuantumState& psi_pe) {
    QuantumState out = state;
    if (state.backend == Backend::dense) {
        const int n = state.layout.n;
        for (std::int64_t idx = 0; idx < out.dense.size(); ++idx)
            if (oracle.marked(phase_of_index(idx, n))) out.dense(idx) = -out.dense(idx);
        const Complex overlap = psi_pe.dense.dot(out.dense);
        out.dense = 2.0 * overlap * psi_pe.dense - out.dense;
        return out;
    }

    for (auto& tr : out.triples)
        if (oracle.marked(tr.phase)) tr.amp = -tr.amp;
    auto pe = triple_map(psi_pe.triples);
    Complex overlap(0.0, 0.0);
    for (const auto& tr : out.triples) {
        auto it = pe.find({tr.phase, tr.eigen_index});
        if (it != pe.end()) overlap += std::conj(it->second) * tr.amp;
    }
    auto cur = triple_map(out.triples);
    std::vector<IdealTriple> result;
    for (const auto& [key, amp] : pe) {
        Complex v = 2.0 * overlap * amp;
        auto it = cur.find(key);
        if (it != cur.end()) {
            v -= it->second;
            cur.erase(it);
        }
        result.push_back({key.first, key.second, v});
    }
    for (const auto& [key, amp] : cur)
        result.push_back({key.first, key.second, -amp});
    std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) {
        return std::tie(a.phase, a.eigen_index) < std::tie(b.phase, b.eigen_index);
    });
    out.triples = std::move(result);
    return out;
}

int grover_iteration_count(int k, int n_states) {
    if (k < 1 || k > n_states)
        throw std::invalid_argument("grover_iteration_count: need 1 <= k <= N");
    return static_cast<int>(
        std::ceil(kPi / 4.0 * std::sqrt(double(n_states) / double(k))));
}

QuantumState grover_run(const QuantumState& psi_pe, const ThresholdOracle& oracle,
                        int r) {
    QuantumState state = psi_pe;
    for (int i = 0; i < r; ++i) state = grover_iteration(state, oracle, psi_pe);
    return state;
}

double grover_angle(int k, int n_states) {
    if (k <= 0 || k >= n_states)
        throw std::invalid_argument("grover_angle: need 0 < k < N");
    return 2.0 * std::asin(std::sqrt(double(k) / double(n_states)));
}

double marked_probability(const QuantumState& state,
                          const ThresholdOracle& oracle) {
    double sum = 0.0;
    if (state.backend == Backend::dense) {
        const int n = state.layout.n;
        for (std::int64_t idx = 0; idx < state.dense.size(); ++idx)
            if (oracle.marked(phase_of_index(idx, n))) sum += std::norm(state.dense(idx));
    } else {
        for (const auto& tr : state.triples)
            if (oracle.marked(tr.phase)) sum += std::norm(tr.amp);
    }
    return sum;
}

DensityMatrix reduced_density(const QuantumState& state) {
    const int n_states = state.layout.n_states();
    DensityMatrix dm;
    dm.rho = Eigen::MatrixXcd::Zero(n_states, n_states);
    if (state.backend == Backend::dense) {
        const int n = state.layout.n;
        const std::uint64_t levels = state.layout.phase_levels();
        for (std::uint64_t p = 0; p < levels; ++p)
            for (int a = 0; a < n_states; ++a) {
                Eigen::VectorXcd col(n_states);
                for (int e = 0; e < n_states; ++e)
                    col(e) = state.dense(make_index(p, e, a, n));
                dm.rho += col * col.adjoint();
            }
        return dm;
    }
    // Tracing the ancilla register kills cross terms between distinct
    // eigenindices, so only the diagonal weights survive.
    for (const auto& tr : state.triples) {
        const double w = std::norm(tr.amp);
        if (state.basis) {
            const Eigen::VectorXd u = state.basis->vectors.col(tr.eigen_index);
            dm.rho += w * (u * u.transpose()).cast<Complex>();
        } else {
            dm.rho(tr.eigen_index, tr.eigen_index) += w;
        }
    }
    return dm;
}

CountingResult quantum_counting(const QuantumState& psi_pe,
                                const ThresholdOracle& oracle, int t_prime,
                                Backend backend) {
    if (t_prime < 1)
        throw std::invalid_argument("quantum_counting: t_prime must be >= 1");
    const int n_states = psi_pe.layout.n_states();
    const double pm = std::clamp(marked_probability(psi_pe, oracle), 0.0, 1.0);
    const double theta = 2.0 * std::asin(std::sqrt(pm));
    const std::uint64_t levels = std::uint64_t{1} << t_prime;

    std::uint64_t outcome;
    if (backend == Backend::ideal) {
        outcome = static_cast<std::uint64_t>(
                      std::floor(theta / (2.0 * kPi) * levels + 0.5)) %
                  levels;
    } else {
        // psi_pe splits into the two G eigenvectors with weight 1/2 each,
        // at eigenphases theta and 2 pi - theta; the counting register
        // sees the mixture of the two QPE kernels. The modal outcome
        // stands in for the measurement, keeping runs deterministic.
        const double phi1 = theta / (2.0 * kPi);
        const double phi2 = 1.0 - phi1;
        outcome = 0;
        double best = -1.0;
        for (std::uint64_t x = 0; x < levels; ++x) {
            const double p = 0.5 * phase_kernel(phi1, x, levels) +
                             0.5 * phase_kernel(phi2, x, levels);
            if (p > best + 1e-15) {
                best = p;
                outcome = x;
            }
        }
    }

    double theta_hat = 2.0 * kPi * double(outcome) / double(levels);
    if (theta_hat > kPi / 2.0 && theta_hat < 3.0 * kPi / 2.0)
        throw std::runtime_error(
            "quantum_counting: ambiguous estimate theta=" +
            std::to_string(theta_hat) + " in [pi/2, 3pi/2]; increase t_prime");
    if (theta_hat >= 3.0 * kPi / 2.0) theta_hat = 2.0 * kPi - theta_hat;

    const double s = std::sin(theta_hat / 2.0);
    CountingResult result;
    result.theta_estimate = theta_hat;
    result.k_estimate =
        static_cast<int>(std::floor(double(n_states) * s * s + 0.5));
    return result;
}

void dump_state(const QuantumState& state, const std::string& path) {
    if (state.backend == Backend::ideal) {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("dump_state: cannot write " + path);
        out.precision(17);
        for (const auto& tr : state.triples)
            out << tr.phase << ',' << tr.eigen_index << ',' << tr.amp.real() << ','
                << tr.amp.imag() << '\n';
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("dump_state: cannot write " + path);
    const std::uint32_t header[2] = {static_cast<std::uint32_t>(state.layout.t),
                                     static_cast<std::uint32_t>(state.layout.n)};
    out.write(reinterpret_cast<const char*>(header), 8);
    for (std::int64_t i = 0; i < state.dense.size(); ++i) {
        const double re = state.dense(i).real();
        const double im = state.dense(i).imag();
        out.write(reinterpret_cast<const char*>(&re), sizeof(double));
        out.write(reinterpret_cast<const char*>(&im), sizeof(double));
    }
}

}  // namespace qspectral
