#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "boundary.hpp"
#include "exact_linalg.hpp"
#include "hypertree.hpp"
#include "random.hpp"
#include "simplicial.hpp"

namespace hypertorsion {

class NumericalDegeneracyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The orthogonal projection onto the row space of (reduced boundary) * X_k,
/// indexed by the (k+1)-faces of [n] in colex order.
template <class Scalar>
struct ProjectionKernel {
    int n;
    int k;
    Matrix<Scalar> entries;

    std::size_t size() const noexcept { return entries.rows(); }
    const Scalar& operator()(std::size_t a, std::size_t b) const { return entries(a, b); }
};

namespace detail {

template <class Scalar>
Scalar int_power(const Scalar& base, std::int64_t e) {
    Scalar result(1);
    if (e < 0) return Scalar(1) / int_power(base, -e);
    Scalar b = base;
    while (e) {
        if (e & 1) result *= b;
        b *= b;
        e >>= 1;
    }
    return result;
}

inline void check_weights(int n, std::size_t size) {
    if (size != static_cast<std::size_t>(n)) throw std::invalid_argument("weight vector length must equal n");
}

}  // namespace detail

/// Kernel from its closed form z^{-1} X_k d^t X_{k-1}^{-2} d X_k:
///   P(t, t)  = z^{-1} sum_{i in t} x_i^2
///   P(t, t') = z^{-1} d(s, t) d(s, t') x_a x_b   when t = s + a, t' = s + b
///   0 otherwise.
template <class Scalar>
ProjectionKernel<Scalar> kernel_closed_form(int n, int k, const WeightVector<Scalar>& w) {
    require_dimensions(n, k);
    detail::check_weights(n, w.size());
    auto faces = enumerate_faces(n, k + 1);
    const std::size_t size = faces.size();
    ProjectionKernel<Scalar> p{n, k, Matrix<Scalar>(size, size)};
    const Scalar inv_z = Scalar(1) / w.z();
    std::vector<Vertex> other;
    for (std::size_t c = 0; c < size; ++c) {
        const Simplex& tau = faces[c];
        Scalar diag(0);
        for (auto v : tau.vertices()) diag += w.x2(v);
        p.entries(c, c) = diag * inv_z;
        for (std::size_t m = 0; m < tau.size(); ++m) {
            const Vertex removed = tau[m];
            const int sign_tau = (m % 2 == 0) ? 1 : -1;
            const Simplex sigma = tau.without(m);
            for (Vertex v = 1; v <= n; ++v) {
                if (tau.contains(v)) continue;
                other.assign(sigma.vertices().begin(), sigma.vertices().end());
                auto it = std::lower_bound(other.begin(), other.end(), v);
                const auto pos = static_cast<std::size_t>(it - other.begin());
                other.insert(it, v);
                const int sign_other = (pos % 2 == 0) ? 1 : -1;
                Scalar val = w.x(removed) * w.x(v) * inv_z;
                if (sign_tau * sign_other < 0) val = -val;
                p.entries(c, rank(std::span<const Vertex>(other))) = val;
            }
        }
    }
    return p;
}

/// (dX)^t (dX^2 d^t)^{-1} (dX) with d the reduced boundary, built by explicit
/// products and inversion. Exact in rational mode.
template <class Scalar>
ProjectionKernel<Scalar> kernel_direct(int n, int k, const WeightVector<Scalar>& w) {
    require_dimensions(n, k);
    detail::check_weights(n, w.size());
    auto rb = build_reduced_boundary(n, k);
    Matrix<Scalar> dx = rb.to_dense<Scalar>() * weight_matrix(n, k + 1, w);
    Matrix<Scalar> dxt = dx.transpose();
    Matrix<Scalar> gram = dx * dxt;
    Matrix<Scalar> inv;
    try {
        inv = invert(gram);
    } catch (const SingularMatrixError&) {
        throw std::logic_error("kernel_direct: weighted Gram matrix is singular");
    }
    return ProjectionKernel<Scalar>{n, k, dxt * inv * dx};
}

/// nu^x(T) = |H|^2 prod_i (x_i^2)^{d_i - m1} / z^{m2}.
template <class Scalar>
Scalar density(const Hypertree& t, const WeightVector<Scalar>& w) {
    detail::check_weights(t.n(), w.size());
    const auto c = constants(t.n(), t.k());
    const auto d = t.degrees();
    Scalar value;
    if constexpr (std::is_floating_point_v<Scalar>) {
        double log_v = 2.0 * std::log(t.torsion_order.get_d()) - static_cast<double>(c.m2) * std::log(w.z());
        for (std::size_t i = 0; i < d.size(); ++i)
            log_v += static_cast<double>(d[i] - c.m1) * std::log(w.squares()[i]);
        value = std::exp(log_v);
    } else {
        value = Scalar(t.torsion_order * t.torsion_order);
        for (std::size_t i = 0; i < d.size(); ++i) value *= detail::int_power(w.squares()[i], d[i] - c.m1);
        value /= detail::int_power(w.z(), c.m2);
    }
    return value;
}

/// Probability that a sample contains every face in B (given by colex ranks):
/// the principal minor det P_{B,B}.
template <class Scalar>
Scalar containment_probability(const ProjectionKernel<Scalar>& p, std::span<const std::size_t> faces) {
    if (faces.empty()) return Scalar(1);
    for (auto f : faces)
        if (f >= p.size()) throw std::out_of_range("containment_probability: face rank out of range");
    return determinant(p.entries.submatrix(faces, faces));
}

template <class Scalar>
Scalar containment_probability(const ProjectionKernel<Scalar>& p, std::span<const Simplex> faces) {
    std::vector<std::size_t> ranks;
    for (const auto& f : faces) {
        if (static_cast<int>(f.size()) != p.k + 1 || f.max_vertex() > p.n)
            throw std::invalid_argument("containment_probability: " + f.to_string() + " is not a (k+1)-face");
        ranks.push_back(rank(f.vertices()));
    }
    return containment_probability(p, std::span<const std::size_t>(ranks));
}

/// Exact sampler for the determinantal measure.
///
/// Faces are visited in colex order; each is included with its conditional
/// marginal K(i,i), after which the kernel is conditioned on the decision by
/// a rank-one Schur update:
///   included:  K <- K - K(.,i) K(i,.) / K(i,i)
///   excluded:  K <- K + K(.,i) K(i,.) / (1 - K(i,i))
class HypertreeSampler {
public:
    static constexpr double kClampTolerance = 1e-9;

    explicit HypertreeSampler(ProjectionKernel<double> kernel)
        : kernel_(std::move(kernel)), target_(static_cast<std::size_t>(constants(kernel_.n, kernel_.k).m3)) {}

    int n() const noexcept { return kernel_.n; }
    int k() const noexcept { return kernel_.k; }
    const ProjectionKernel<double>& kernel() const noexcept { return kernel_; }

    /// One draw, as sorted colex ranks of the chosen faces.
    std::vector<std::size_t> sample_ranks(Rng& rng) const {
        Matrix<double> a = kernel_.entries;
        const std::size_t size = a.rows();
        std::vector<std::size_t> chosen;
        chosen.reserve(target_);
        for (std::size_t i = 0; i < size && chosen.size() < target_; ++i) {
            double p = a(i, i);
            if (p < -kClampTolerance || p > 1.0 + kClampTolerance)
                throw NumericalDegeneracyError("sampler: conditional probability " + std::to_string(p) +
                                               " outside [0, 1]");
            p = std::clamp(p, 0.0, 1.0);
            const bool take = uniform01(rng) < p;
            if (take) chosen.push_back(i);
            const double denom = take ? p : p - 1.0;
            if (denom == 0.0) continue;  // decision was certain; kernel unchanged
            for (std::size_t r = i + 1; r < size; ++r) {
                const double f = a(r, i) / denom;
                if (f == 0.0) continue;
                for (std::size_t c = i + 1; c < size; ++c) a(r, c) -= f * a(i, c);
            }
        }
        if (chosen.size() != target_)
            throw NumericalDegeneracyError("sampler: drew " + std::to_string(chosen.size()) + " faces, expected " +
                                           std::to_string(target_));
        return chosen;
    }

    Hypertree sample(Rng& rng) const {
        auto ranks = sample_ranks(rng);
        auto c = Complex::from_ranks(kernel_.n, kernel_.k, ranks);
        return make_hypertree(std::move(c));
    }

private:
    ProjectionKernel<double> kernel_;
    std::size_t target_;
};

/// Convenience: seeded single draw from nu^x.
inline Hypertree sample(int n, int k, const WeightVector<double>& w, std::uint64_t seed) {
    HypertreeSampler s(kernel_closed_form(n, k, w));
    Rng rng(seed);
    return s.sample(rng);
}

}  // namespace hypertorsion
