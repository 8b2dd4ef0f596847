#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "telecanon/errors.hpp"

namespace telecanon {

using cplx = std::complex<double>;

inline constexpr double kNormTol = 1e-10;       // state normalization
inline constexpr double kPredicateTol = 1e-10;  // unitary / zero verdicts
inline constexpr double kHermitianTol = 1e-12;  // density-matrix checks

/// Qubit labels. Alice holds 1 and 2, Bob holds 3, `a` is the unknown input.
enum class Qubit : char { one = '1', two = '2', three = '3', a = 'a' };

inline char label_char(Qubit q) { return static_cast<char>(q); }

inline std::string label_string(const std::vector<Qubit>& qs) {
    std::string out;
    for (Qubit q : qs) out.push_back(label_char(q));
    return out;
}

/// Pure state over an ordered list of labeled qubits.
///
/// Amplitude indexing is big-endian over the label order: for labels
/// (l0, l1, ..., l_{n-1}) the bit of l0 is the most significant, so for
/// labels (1,2,a) the index is 4*q1 + 2*q2 + qa.
struct PureState {
    std::vector<Qubit> qubits;
    std::vector<cplx> amps;

    std::size_t num_qubits() const { return qubits.size(); }
    std::size_t dim() const { return amps.size(); }
};

/// 2x2 complex matrix. Row = Bob's output bit, column = input bit.
struct Matrix2 {
    std::array<cplx, 4> e{};

    cplx& operator()(int r, int c) { return e[static_cast<std::size_t>(2 * r + c)]; }
    const cplx& operator()(int r, int c) const { return e[static_cast<std::size_t>(2 * r + c)]; }

    static Matrix2 identity() { return Matrix2{{cplx(1), cplx(0), cplx(0), cplx(1)}}; }
    static Matrix2 zero() { return Matrix2{}; }

    Matrix2 adjoint() const {
        return Matrix2{{std::conj(e[0]), std::conj(e[2]), std::conj(e[1]), std::conj(e[3])}};
    }

    std::array<cplx, 2> apply(const std::array<cplx, 2>& v) const {
        return {e[0] * v[0] + e[1] * v[1], e[2] * v[0] + e[3] * v[1]};
    }

    friend Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
        Matrix2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
        return r;
    }

    friend Matrix2 operator*(cplx s, const Matrix2& m) {
        Matrix2 r = m;
        for (auto& x : r.e) x *= s;
        return r;
    }

    friend Matrix2 operator-(const Matrix2& a, const Matrix2& b) {
        Matrix2 r;
        for (std::size_t k = 0; k < 4; ++k) r.e[k] = a.e[k] - b.e[k];
        return r;
    }
};

inline double max_abs(const Matrix2& m) {
    double r = 0.0;
    for (const cplx& x : m.e) r = std::max(r, std::abs(x));
    return r;
}

inline bool all_finite(const Matrix2& m) {
    for (const cplx& x : m.e)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
    return true;
}

/// Square density matrix, row-major. dim is a power of two.
struct DensityMatrix {
    std::size_t dim = 0;
    std::vector<cplx> entries;

    cplx& at(std::size_t r, std::size_t c) { return entries[r * dim + c]; }
    const cplx& at(std::size_t r, std::size_t c) const { return entries[r * dim + c]; }
};

struct Verdict {
    bool ok = false;
    double residual = 0.0;
    explicit operator bool() const { return ok; }
};

// ---------------------------------------------------------------------------
// State construction and bookkeeping
// ---------------------------------------------------------------------------

inline bool all_finite(const PureState& s) {
    for (const cplx& x : s.amps)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
    return true;
}

inline double norm(const PureState& s) {
    double n2 = 0.0;
    for (const cplx& x : s.amps) n2 += std::norm(x);
    return std::sqrt(n2);
}

inline bool is_normalized(const PureState& s, double tol = kNormTol) {
    return std::abs(norm(s) - 1.0) <= tol;
}

inline bool labels_distinct(const std::vector<Qubit>& qs) {
    for (std::size_t i = 0; i < qs.size(); ++i)
        for (std::size_t j = i + 1; j < qs.size(); ++j)
            if (qs[i] == qs[j]) return false;
    return true;
}

inline PureState make_state(std::vector<Qubit> qubits, std::vector<cplx> amps) {
    if (!labels_distinct(qubits)) throw LabelCollision("duplicate qubit label");
    if (amps.size() != (std::size_t{1} << qubits.size()))
        throw LabelMismatch("amplitude count does not match qubit count");
    PureState s{std::move(qubits), std::move(amps)};
    if (!all_finite(s)) throw Error("non-finite amplitude");
    return s;
}

/// Computational basis ket |index> over the given labels.
inline PureState basis_state(std::vector<Qubit> qubits, std::size_t index) {
    std::vector<cplx> amps(std::size_t{1} << qubits.size(), cplx(0));
    amps.at(index) = cplx(1);
    return PureState{std::move(qubits), std::move(amps)};
}

/// Normalized single-qubit state alpha|0> + beta|1>.
inline PureState qubit_state(Qubit label, cplx alpha, cplx beta, double tol = kNormTol) {
    PureState s{{label}, {alpha, beta}};
    if (!all_finite(s)) throw Error("non-finite amplitude");
    if (!is_normalized(s, tol)) throw NotNormalized("|alpha|^2 + |beta|^2 != 1");
    return s;
}

/// Same amplitudes under new labels (no permutation).
inline PureState relabeled(const PureState& s, std::vector<Qubit> new_labels) {
    if (new_labels.size() != s.qubits.size()) throw LabelMismatch("label count changed");
    if (!labels_distinct(new_labels)) throw LabelCollision("duplicate qubit label");
    return PureState{std::move(new_labels), s.amps};
}

/// Permute the qubit order, carrying amplitudes along.
inline PureState reordered(const PureState& s, const std::vector<Qubit>& new_order) {
    const std::size_t n = s.qubits.size();
    if (new_order.size() != n) throw LabelMismatch("reorder must keep all qubits");
    std::vector<std::size_t> src_pos(n);  // position in s.qubits of each new_order label
    for (std::size_t i = 0; i < n; ++i) {
        auto it = std::find(s.qubits.begin(), s.qubits.end(), new_order[i]);
        if (it == s.qubits.end()) throw LabelMismatch("unknown label in reorder");
        src_pos[i] = static_cast<std::size_t>(it - s.qubits.begin());
    }
    if (!labels_distinct(new_order)) throw LabelCollision("duplicate qubit label");
    std::vector<cplx> out(s.amps.size());
    for (std::size_t k = 0; k < s.amps.size(); ++k) {
        std::size_t j = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t bit = (k >> (n - 1 - src_pos[i])) & 1u;
            j |= bit << (n - 1 - i);
        }
        out[j] = s.amps[k];
    }
    return PureState{new_order, std::move(out)};
}

// ---------------------------------------------------------------------------
// Core operations
// ---------------------------------------------------------------------------

inline PureState tensor_product(const PureState& left, const PureState& right) {
    for (Qubit q : left.qubits)
        for (Qubit p : right.qubits)
            if (q == p) throw LabelCollision(std::string("shared label ") + label_char(q));
    std::vector<Qubit> qubits = left.qubits;
    qubits.insert(qubits.end(), right.qubits.begin(), right.qubits.end());
    const std::size_t nr = right.num_qubits();
    std::vector<cplx> amps(left.dim() * right.dim());
    for (std::size_t kl = 0; kl < left.dim(); ++kl)
        for (std::size_t kr = 0; kr < right.dim(); ++kr)
            amps[(kl << nr) | kr] = left.amps[kl] * right.amps[kr];
    return PureState{std::move(qubits), std::move(amps)};
}

inline cplx inner_product(const PureState& bra, const PureState& ket) {
    if (bra.qubits != ket.qubits) throw LabelMismatch("inner product needs identical labels");
    cplx acc(0);
    for (std::size_t k = 0; k < bra.dim(); ++k) acc += std::conj(bra.amps[k]) * ket.amps[k];
    return acc;
}

/// |<s1|s2>|^2; insensitive to global phase.
inline double fidelity_pure(const PureState& s1, const PureState& s2, double tol = kNormTol) {
    if (s1.qubits != s2.qubits) throw LabelMismatch("fidelity needs identical labels");
    if (!is_normalized(s1, tol) || !is_normalized(s2, tol))
        throw NotNormalized("fidelity_pure requires normalized states");
    return std::norm(inner_product(s1, s2));
}

/// Trace out all qubits not in `keep`. The reduced matrix is indexed over the
/// kept qubits in the order they appear in state.qubits.
inline DensityMatrix partial_trace(const PureState& state, const std::vector<Qubit>& keep) {
    const std::size_t n = state.num_qubits();
    if (keep.empty()) throw LabelMismatch("partial_trace needs a nonempty keep set");
    std::vector<std::size_t> keep_pos;  // positions within state.qubits, ascending
    for (std::size_t i = 0; i < n; ++i) {
        if (std::find(keep.begin(), keep.end(), state.qubits[i]) != keep.end())
            keep_pos.push_back(i);
    }
    for (Qubit q : keep)
        if (std::find(state.qubits.begin(), state.qubits.end(), q) == state.qubits.end())
            throw LabelMismatch(std::string("unknown label ") + label_char(q));
    const std::size_t nk = keep_pos.size();
    const std::size_t dk = std::size_t{1} << nk;

    auto kept_bits = [&](std::size_t full) {
        std::size_t r = 0;
        for (std::size_t i = 0; i < nk; ++i)
            r |= ((full >> (n - 1 - keep_pos[i])) & 1u) << (nk - 1 - i);
        return r;
    };
    auto traced_bits = [&](std::size_t full) {
        std::size_t r = 0, bit = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (std::find(keep_pos.begin(), keep_pos.end(), i) != keep_pos.end()) continue;
            r |= ((full >> (n - 1 - i)) & 1u) << bit++;
        }
        return r;
    };

    DensityMatrix rho{dk, std::vector<cplx>(dk * dk, cplx(0))};
    for (std::size_t k1 = 0; k1 < state.dim(); ++k1) {
        for (std::size_t k2 = 0; k2 < state.dim(); ++k2) {
            if (traced_bits(k1) != traced_bits(k2)) continue;
            rho.at(kept_bits(k1), kept_bits(k2)) += state.amps[k1] * std::conj(state.amps[k2]);
        }
    }
    return rho;
}

inline cplx trace(const DensityMatrix& rho) {
    cplx t(0);
    for (std::size_t i = 0; i < rho.dim; ++i) t += rho.at(i, i);
    return t;
}

inline double hermiticity_deviation(const DensityMatrix& rho) {
    double d = 0.0;
    for (std::size_t r = 0; r < rho.dim; ++r)
        for (std::size_t c = 0; c < rho.dim; ++c)
            d = std::max(d, std::abs(rho.at(r, c) - std::conj(rho.at(c, r))));
    return d;
}

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations, ascending.
inline std::vector<double> hermitian_eigenvalues(const DensityMatrix& m) {
    const std::size_t dim = m.dim;
    std::vector<cplx> a = m.entries;
    auto at = [&](std::size_t r, std::size_t c) -> cplx& { return a[r * dim + c]; };

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < dim; ++p)
            for (std::size_t q = p + 1; q < dim; ++q) off = std::max(off, std::abs(at(p, q)));
        if (off < 1e-15) break;
        for (std::size_t p = 0; p < dim; ++p) {
            for (std::size_t q = p + 1; q < dim; ++q) {
                const cplx g = at(p, q);
                const double ag = std::abs(g);
                if (ag < 1e-300) continue;
                const cplx phase = g / ag;
                const double h = std::real(at(p, p)) - std::real(at(q, q));
                const double tau = h / (2.0 * ag);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // A <- U^† A U with columns u_p = c e_p + s conj(phase) e_q,
                // u_q = -s phase e_p + c e_q; zeroes A[p][q].
                for (std::size_t r = 0; r < dim; ++r) {
                    const cplx arp = at(r, p), arq = at(r, q);
                    at(r, p) = c * arp + s * std::conj(phase) * arq;
                    at(r, q) = -s * phase * arp + c * arq;
                }
                for (std::size_t r = 0; r < dim; ++r) {
                    const cplx apr = at(p, r), aqr = at(q, r);
                    at(p, r) = c * apr + s * phase * aqr;
                    at(q, r) = -s * std::conj(phase) * apr + c * aqr;
                }
            }
        }
    }
    std::vector<double> evals(dim);
    for (std::size_t i = 0; i < dim; ++i) evals[i] = std::real(at(i, i));
    std::sort(evals.begin(), evals.end());
    return evals;
}

/// -sum lambda_i log2 lambda_i over the eigenvalues, with 0 log 0 := 0.
inline double von_neumann_entropy(const DensityMatrix& rho, double tol = kNormTol,
                                  double herm_tol = kHermitianTol) {
    if (rho.dim == 0 || rho.entries.size() != rho.dim * rho.dim)
        throw InvalidDensityMatrix("bad dimensions");
    if (hermiticity_deviation(rho) > herm_tol) throw InvalidDensityMatrix("not Hermitian");
    if (std::abs(trace(rho) - cplx(1)) > tol) throw InvalidDensityMatrix("trace != 1");
    double h = 0.0;
    for (double lam : hermitian_eigenvalues(rho)) {
        if (lam < -tol) throw InvalidDensityMatrix("negative eigenvalue");
        const double l = std::clamp(lam, 0.0, 1.0);
        if (l > 0.0) h -= l * std::log2(l);
    }
    return h;
}

inline Verdict is_unitary(const Matrix2& m, double tol = kPredicateTol) {
    const Matrix2 gram = m.adjoint() * m;
    const double residual = max_abs(gram - Matrix2::identity());
    return Verdict{residual <= tol, residual};
}

inline Verdict is_zero(const Matrix2& m, double tol = kPredicateTol) {
    const double residual = max_abs(m);
    return Verdict{residual <= tol, residual};
}

// ---------------------------------------------------------------------------
// Orthonormal completion of a half-normed real 3-vector
// ---------------------------------------------------------------------------

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& x, const Vec3& y) { return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]; }

inline Vec3 cross(const Vec3& x, const Vec3& y) {
    return {x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
}

/// Two unit vectors (c, d) with c·v = d·v = c·d = 0, for |v|^2 = 1/2.
///
/// Deterministic: take the reference axis e_k with the smallest |v_k|
/// (lowest k on ties), Gram-Schmidt it against the unit vector sqrt(2)*v
/// to get c, then d = (sqrt(2)*v) x c.
inline std::pair<Vec3, Vec3> orthonormal_complement(const Vec3& v, double tol = kNormTol) {
    const double n2 = dot(v, v);
    if (std::abs(n2 - 0.5) > tol) throw NotHalfNormed("|v|^2 != 1/2");
    const Vec3 unit{v[0] * std::numbers::sqrt2, v[1] * std::numbers::sqrt2,
                    v[2] * std::numbers::sqrt2};
    std::size_t k = 0;
    for (std::size_t i = 1; i < 3; ++i)
        if (std::abs(v[i]) < std::abs(v[k])) k = i;
    Vec3 c{0.0, 0.0, 0.0};
    c[k] = 1.0;
    const double proj = dot(c, unit);
    for (std::size_t i = 0; i < 3; ++i) c[i] -= proj * unit[i];
    const double cn = std::sqrt(dot(c, c));
    for (double& x : c) x /= cn;
    Vec3 d = cross(unit, c);
    const double dn = std::sqrt(dot(d, d));
    for (double& x : d) x /= dn;
    return {c, d};
}

}  // namespace telecanon
