#pragma once

// Exact rays of the 600-cell and pool-based vector assignment.
//
// Coordinates live in Q(phi), phi = (1 + sqrt 5) / 2, stored as a + b*phi
// with a, b arbitrary-precision rationals. Since 1 and phi are linearly
// independent over Q, a value is zero iff both parts are zero, so every
// orthogonality test is exact.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ksforge/mmp.hpp"

namespace ksforge {

class QExt {
public:
    QExt() = default;
    QExt(mpq_class a, mpq_class b = 0) : a_(std::move(a)), b_(std::move(b)) {}  // NOLINT(google-explicit-constructor)

    static QExt phi() { return {0, 1}; }

    [[nodiscard]] const mpq_class& rational() const { return a_; }
    [[nodiscard]] const mpq_class& phi_part() const { return b_; }
    [[nodiscard]] bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
    /// Sign of the real number a + b*phi.
    [[nodiscard]] int sign() const;

    friend QExt operator+(const QExt& x, const QExt& y) { return {x.a_ + y.a_, x.b_ + y.b_}; }
    friend QExt operator-(const QExt& x, const QExt& y) { return {x.a_ - y.a_, x.b_ - y.b_}; }
    friend QExt operator-(const QExt& x) { return {-x.a_, -x.b_}; }
    // phi^2 = phi + 1
    friend QExt operator*(const QExt& x, const QExt& y) {
        return {x.a_ * y.a_ + x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_ + x.b_ * y.b_};
    }
    friend bool operator==(const QExt& x, const QExt& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

    /// "a+b*phi" (or "a-b*phi"), parts in lowest terms.
    [[nodiscard]] std::string str() const;

private:
    mpq_class a_ = 0;
    mpq_class b_ = 0;
};

using Vec4 = std::array<QExt, 4>;

[[nodiscard]] QExt dot(const Vec4& x, const Vec4& y);

/// A 1-dimensional subspace. The stored representative has integer parts
/// with no common factor and its first nonzero component positive.
class Ray {
public:
    /// Throws std::invalid_argument for the zero vector.
    explicit Ray(const Vec4& v);

    [[nodiscard]] const Vec4& components() const { return c_; }
    [[nodiscard]] std::string str() const;

    friend bool operator==(const Ray& x, const Ray& y) { return x.c_ == y.c_; }

private:
    Vec4 c_;
};

[[nodiscard]] inline bool orthogonal(const Ray& x, const Ray& y) { return dot(x.components(), y.components()).is_zero(); }

struct RaySystem {
    std::vector<Ray> rays;
    std::vector<std::array<std::size_t, 4>> tetrads;  // ascending ray indices

    /// The tetrads as an MMP hypergraph over ray indices.
    [[nodiscard]] Hypergraph as_hypergraph() const;
};

/// 60 rays from the 120 vertices of the 600-cell (antipodes identified) and
/// all 75 sets of four mutually orthogonal rays.
[[nodiscard]] RaySystem generate_600cell();

/// mapping[v] is a ray index into the pool.
using Assignment = std::vector<std::size_t>;

struct AssignmentOptions {
    std::uint64_t node_budget = 0;  // 0 = unlimited
};

/// Injective vertex -> ray map sending each edge to four mutually
/// orthogonal rays, by backtracking on the most constrained vertex.
/// Empty means no assignment exists within this pool.
[[nodiscard]] std::optional<Assignment> find_assignment(const Hypergraph& h, const RaySystem& pool,
                                                        AssignmentOptions opts = {});

[[nodiscard]] bool verify_assignment(const Hypergraph& h, const RaySystem& pool, const Assignment& mapping);

}  // namespace ksforge
