#include "ksforge/geometry.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace ksforge {

int QExt::sign() const {
    // a + b*phi = (p + q*sqrt5) / 2 with p = 2a + b, q = b.
    const mpq_class p = 2 * a_ + b_;
    const mpq_class& q = b_;
    const int sp = sgn(p), sq = sgn(q);
    if (sq == 0) return sp;
    if (sp == 0 || sp == sq) return sq;
    const mpq_class lhs = p * p, rhs = 5 * q * q;
    if (lhs == rhs) return 0;  // unreachable for rational p, q != 0
    return lhs > rhs ? sp : sq;
}

std::string QExt::str() const {
    std::string out = a_.get_str();
    if (sgn(b_) < 0) {
        out += "-" + mpq_class(-b_).get_str();
    } else {
        out += "+" + b_.get_str();
    }
    return out + "*phi";
}

QExt dot(const Vec4& x, const Vec4& y) {
    QExt s;
    for (std::size_t i = 0; i < 4; ++i) s = s + x[i] * y[i];
    return s;
}

namespace {

QExt inverse(const QExt& x) {
    const mpq_class& a = x.rational();
    const mpq_class& b = x.phi_part();
    const mpq_class norm = a * a + a * b - b * b;
    return {(a + b) / norm, -b / norm};
}

}  // namespace

Ray::Ray(const Vec4& v) {
    const auto lead = std::find_if(v.begin(), v.end(), [](const QExt& x) { return !x.is_zero(); });
    if (lead == v.end()) throw std::invalid_argument("zero vector is not a ray");

    // Scale so the leading component is 1, then clear denominators and
    // divide out the common content.
    const QExt inv = inverse(*lead);
    for (std::size_t i = 0; i < 4; ++i) c_[i] = v[i] * inv;

    mpz_class den = 1, content = 0;
    for (const QExt& x : c_)
        for (const mpq_class* part : {&x.rational(), &x.phi_part()}) {
            mpz_class l;
            mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), part->get_den_mpz_t());
            den = l;
        }
    for (const QExt& x : c_)
        for (const mpq_class* part : {&x.rational(), &x.phi_part()}) {
            const mpz_class num = part->get_num() * (den / part->get_den());
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), content.get_mpz_t(), num.get_mpz_t());
            content = g;
        }
    const mpq_class scale(den, content);
    for (QExt& x : c_) x = x * QExt(scale);
}

std::string Ray::str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < 4; ++i) {
        if (i) out += ", ";
        out += c_[i].str();
    }
    return out + ")";
}

Hypergraph RaySystem::as_hypergraph() const {
    std::vector<Edge> edges;
    edges.reserve(tetrads.size());
    for (const auto& t : tetrads) {
        Edge e;
        for (std::size_t i = 0; i < 4; ++i) e.v[i] = static_cast<VertexId>(t[i]);
        edges.push_back(e);
    }
    return Hypergraph(rays.size(), std::move(edges));
}

RaySystem generate_600cell() {
    const QExt phi = QExt::phi();
    const QExt inv_phi = phi - QExt(1);
    std::vector<Vec4> vertices;

    // (+-2, 0, 0, 0) and permutations.
    for (std::size_t i = 0; i < 4; ++i)
        for (int s : {1, -1}) {
            Vec4 v{};
            v[i] = QExt(2 * s);
            vertices.push_back(v);
        }
    // (+-1, +-1, +-1, +-1).
    for (int mask = 0; mask < 16; ++mask) {
        Vec4 v;
        for (std::size_t i = 0; i < 4; ++i) v[i] = QExt((mask >> i) & 1 ? -1 : 1);
        vertices.push_back(v);
    }
    // Even permutations of (+-phi, +-1, +-1/phi, 0).
    const std::array<QExt, 4> base{phi, QExt(1), inv_phi, QExt(0)};
    std::array<int, 4> perm{0, 1, 2, 3};
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i + 1; j < 4; ++j) inversions += perm[i] > perm[j] ? 1 : 0;
        if (inversions % 2) continue;
        for (int mask = 0; mask < 8; ++mask) {
            Vec4 v;
            for (std::size_t i = 0; i < 4; ++i) {
                const int src = perm[i];
                v[i] = base[static_cast<std::size_t>(src)];
                if (src < 3 && ((mask >> src) & 1)) v[i] = -v[i];
            }
            vertices.push_back(v);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    RaySystem sys;
    for (const Vec4& v : vertices) {
        Ray r(v);
        if (std::find(sys.rays.begin(), sys.rays.end(), r) == sys.rays.end()) sys.rays.push_back(std::move(r));
    }

    const std::size_t n = sys.rays.size();
    std::vector<std::vector<bool>> orth(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) orth[i][j] = orth[j][i] = orthogonal(sys.rays[i], sys.rays[j]);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            if (!orth[a][b]) continue;
            for (std::size_t c = b + 1; c < n; ++c) {
                if (!orth[a][c] || !orth[b][c]) continue;
                for (std::size_t d = c + 1; d < n; ++d)
                    if (orth[a][d] && orth[b][d] && orth[c][d]) sys.tetrads.push_back({a, b, c, d});
            }
        }
    return sys;
}

namespace {

using Word = std::uint64_t;

class AssignmentSearch {
public:
    AssignmentSearch(const Hypergraph& h, const RaySystem& pool, AssignmentOptions opts)
        : h_(h), opts_(opts), n_rays_(pool.rays.size()), words_((n_rays_ + 63) / 64),
          orth_(n_rays_, std::vector<Word>(words_, 0)), used_(words_, 0), neighbors_(h.vertex_count()),
          assigned_(h.vertex_count(), kUnassigned) {
        for (std::size_t i = 0; i < n_rays_; ++i)
            for (std::size_t j = 0; j < n_rays_; ++j)
                if (i != j && orthogonal(pool.rays[i], pool.rays[j])) orth_[i][j / 64] |= Word{1} << (j % 64);
        for (const Edge& e : h.edges())
            for (VertexId a : e.v)
                for (VertexId b : e.v)
                    if (a != b && std::find(neighbors_[a].begin(), neighbors_[a].end(), b) == neighbors_[a].end())
                        neighbors_[a].push_back(b);
    }

    std::optional<Assignment> run() {
        if (h_.vertex_count() > n_rays_) return std::nullopt;
        if (!search(0)) return std::nullopt;
        return assigned_;
    }

private:
    std::vector<Word> candidates(VertexId v) const {
        std::vector<Word> c(words_, ~Word{0});
        if (n_rays_ % 64) c.back() = (Word{1} << (n_rays_ % 64)) - 1;
        for (VertexId u : neighbors_[v])
            if (assigned_[u] != kUnassigned)
                for (std::size_t w = 0; w < words_; ++w) c[w] &= orth_[assigned_[u]][w];
        for (std::size_t w = 0; w < words_; ++w) c[w] &= ~used_[w];
        return c;
    }

    static std::size_t count(const std::vector<Word>& bits) {
        std::size_t n = 0;
        for (Word w : bits) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    bool search(std::size_t done) {
        if (done == h_.vertex_count()) return true;
        if (opts_.node_budget && ++nodes_ > opts_.node_budget) return false;

        VertexId pick = 0;
        std::vector<Word> best;
        std::size_t best_count = SIZE_MAX;
        for (VertexId v = 0; v < h_.vertex_count(); ++v) {
            if (assigned_[v] != kUnassigned) continue;
            std::vector<Word> c = candidates(v);
            const std::size_t k = count(c);
            if (k == 0) return false;
            if (k < best_count) {
                best_count = k;
                best = std::move(c);
                pick = v;
            }
        }
        for (std::size_t w = 0; w < words_; ++w) {
            Word bits = best[w];
            while (bits) {
                const std::size_t ray = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                bits &= bits - 1;
                assigned_[pick] = ray;
                used_[ray / 64] |= Word{1} << (ray % 64);
                if (search(done + 1)) return true;
                used_[ray / 64] &= ~(Word{1} << (ray % 64));
                assigned_[pick] = kUnassigned;
                if (opts_.node_budget && nodes_ > opts_.node_budget) return false;
            }
        }
        return false;
    }

    static constexpr std::size_t kUnassigned = SIZE_MAX;

    const Hypergraph& h_;
    AssignmentOptions opts_;
    std::size_t n_rays_;
    std::size_t words_;
    std::vector<std::vector<Word>> orth_;
    std::vector<Word> used_;
    std::vector<std::vector<VertexId>> neighbors_;
    Assignment assigned_;
    std::uint64_t nodes_ = 0;
};

}  // namespace

std::optional<Assignment> find_assignment(const Hypergraph& h, const RaySystem& pool, AssignmentOptions opts) {
    auto result = AssignmentSearch(h, pool, opts).run();
    if (result && !verify_assignment(h, pool, *result)) return std::nullopt;
    return result;
}

bool verify_assignment(const Hypergraph& h, const RaySystem& pool, const Assignment& mapping) {
    if (mapping.size() != h.vertex_count()) return false;
    std::vector<bool> used(pool.rays.size(), false);
    for (std::size_t r : mapping) {
        if (r >= pool.rays.size() || used[r]) return false;
        used[r] = true;
    }
    for (const Edge& e : h.edges())
        for (std::size_t i = 0; i < kEdgeSize; ++i)
            for (std::size_t j = i + 1; j < kEdgeSize; ++j)
                if (!orthogonal(pool.rays[mapping[e.v[i]]], pool.rays[mapping[e.v[j]]])) return false;
    return true;
}

}  // namespace ksforge
