#include "voronoi/isometry.hpp"

#include "voronoi/shortvec.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace voronoi {

namespace {

using i64 = long;  // 64-bit on LP64; GMP converts it directly
using i128 = __int128;

// Gram matrix scaled to integers by a fixed factor.
struct IntGram {
    std::size_t g = 0;
    std::vector<i64> a;
    i64 at(std::size_t i, std::size_t j) const { return a[i * g + j]; }
};

IntGram integral_gram(const QuadForm& q, const Integer& scale) {
    IntGram out{q.dim(), std::vector<i64>(q.dim() * q.dim())};
    for (std::size_t i = 0; i < q.dim(); ++i)
        for (std::size_t j = 0; j < q.dim(); ++j) {
            Rational v = q(i, j) * scale;
            if (v.get_den() != 1 || !v.get_num().fits_slong_p() || abs(v.get_num()) > (1L << 30))
                throw DomainError("form entries too large for the isometry search");
            out.a[i * out.g + j] = v.get_num().get_si();
        }
    return out;
}

using Vec = std::vector<i64>;

struct Candidate {
    Vec v;
    Vec gv;  // G v
    i64 norm;
};

Candidate make_candidate(const IntGram& gram, Vec v) {
    Candidate c{std::move(v), Vec(gram.g, 0), 0};
    for (std::size_t i = 0; i < gram.g; ++i)
        for (std::size_t j = 0; j < gram.g; ++j) c.gv[i] += gram.at(i, j) * c.v[j];
    for (std::size_t i = 0; i < gram.g; ++i) c.norm += c.v[i] * c.gv[i];
    return c;
}

i64 inner(const Candidate& a, const Candidate& b) {
    i64 s = 0;
    for (std::size_t i = 0; i < a.v.size(); ++i) s += a.gv[i] * b.v[i];
    return s;
}

// Both signs of every vector of norm <= bound (norm in original units).
std::vector<Vec> signed_short_vectors(const QuadForm& q, const Rational& bound) {
    std::vector<Vec> out;
    for (const auto& sv : short_vectors(q, bound)) {
        Vec v;
        for (const auto& c : sv.x.coords()) v.push_back(c.get_si());
        Vec w(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) w[i] = -v[i];
        out.push_back(std::move(v));
        out.push_back(std::move(w));
    }
    return out;
}

i128 det128(std::vector<i128> m, std::size_t n) {
    // Bareiss on a small square matrix.
    if (n == 0) return 1;
    i128 prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k * n + k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p * n + k] == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m[p * n + j], m[k * n + j]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i * n + j] = (m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j]) / prev;
        prev = m[k * n + k];
    }
    return sign * m[n * n - 1];
}

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// The vectors extend to a basis of Z^g iff the gcd of their maximal minors is 1.
bool extends_to_basis(const std::vector<const Vec*>& vs, std::size_t g) {
    const std::size_t k = vs.size();
    if (k == 0) return true;
    if (k > g) return false;
    std::vector<std::size_t> cols(k);
    std::iota(cols.begin(), cols.end(), 0);
    i128 acc = 0;
    for (;;) {
        std::vector<i128> m(k * k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) m[i * k + j] = (*vs[i])[cols[j]];
        acc = gcd128(acc, det128(std::move(m), k));
        if (acc == 1) return true;
        // next combination
        std::size_t i = k;
        while (i > 0 && cols[i - 1] == g - k + i - 1) --i;
        if (i == 0) break;
        ++cols[i - 1];
        for (std::size_t j = i; j < k; ++j) cols[j] = cols[j - 1] + 1;
    }
    return false;
}

IntMatrix columns_to_matrix(const std::vector<Vec>& cols) {
    const std::size_t g = cols.size();
    IntMatrix m(g, g);
    for (std::size_t j = 0; j < g; ++j)
        for (std::size_t i = 0; i < g; ++i) m(i, j) = cols[j][i];
    return m;
}

Rational max_diagonal(const QuadForm& q) {
    Rational m = q(0, 0);
    for (std::size_t i = 1; i < q.dim(); ++i) m = std::max(m, q(i, i));
    return m;
}

// Some basis of Z^g made of short vectors of q, greedily by norm.
std::vector<Vec> short_basis(const QuadForm& q) {
    const std::size_t g = q.dim();
    const Rational top = max_diagonal(q);
    Rational bound = minimal_vectors_unchecked(q).minimum;
    for (;;) {
        auto vs = short_vectors(q, bound);
        std::stable_sort(vs.begin(), vs.end(), [](const ShortVector& a, const ShortVector& b) { return a.norm < b.norm; });
        std::vector<Vec> chosen;
        std::vector<const Vec*> ptrs;
        for (const auto& sv : vs) {
            Vec v;
            for (const auto& c : sv.x.coords()) v.push_back(c.get_si());
            chosen.push_back(std::move(v));
            ptrs.assign({});
            for (const auto& c : chosen) ptrs.push_back(&c);
            if (!extends_to_basis(ptrs, g)) chosen.pop_back();
            if (chosen.size() == g) return chosen;
        }
        if (bound >= top) {
            std::vector<Vec> id(g, Vec(g, 0));
            for (std::size_t i = 0; i < g; ++i) id[i][i] = 1;
            return id;
        }
        bound = std::min(top, Rational(bound * 2));
    }
}

struct Invariants {
    Rational det;
    Rational minimum;
    std::size_t kissing;
    std::vector<Rational> pairwise;
    bool operator==(const Invariants&) const = default;
};

Invariants invariants(const QuadForm& q) {
    const auto mv = minimal_vectors_unchecked(q);
    Invariants inv{q.determinant(), mv.minimum, mv.kissing(), {}};
    for (std::size_t i = 0; i < mv.reps.size(); ++i)
        for (std::size_t j = i + 1; j < mv.reps.size(); ++j) inv.pairwise.push_back(abs(q.bilinear(mv.reps[i], mv.reps[j])));
    std::sort(inv.pairwise.begin(), inv.pairwise.end());
    return inv;
}

// Backtracking over ordered tuples (u_0..u_{g-1}) of candidates with
// u_i^T G u_j = target(i, j). `leaf` returns true to stop the search.
class TupleSearch {
public:
    TupleSearch(std::vector<Candidate> cands, std::vector<i64> target, std::size_t g)
        : cands_(std::move(cands)), target_(std::move(target)), g_(g), by_level_(g) {
        for (std::size_t i = 0; i < g_; ++i)
            for (std::size_t c = 0; c < cands_.size(); ++c)
                if (cands_[c].norm == target_[i * g_ + i]) by_level_[i].push_back(c);
    }

    void run(const std::function<bool(const std::vector<std::size_t>&)>& leaf) {
        chosen_.clear();
        leaf_ = &leaf;
        recurse(0);
    }

    const Candidate& candidate(std::size_t k) const { return cands_[k]; }

private:
    bool recurse(std::size_t level) {
        if (level == g_) return (*leaf_)(chosen_);
        for (std::size_t c : by_level_[level]) {
            bool ok = true;
            for (std::size_t j = 0; j < level && ok; ++j)
                if (inner(cands_[c], cands_[chosen_[j]]) != target_[j * g_ + level]) ok = false;
            if (!ok) continue;
            chosen_.push_back(c);
            const bool stop = recurse(level + 1);
            chosen_.pop_back();
            if (stop) return true;
        }
        return false;
    }

    std::vector<Candidate> cands_;
    std::vector<i64> target_;
    std::size_t g_;
    std::vector<std::vector<std::size_t>> by_level_;
    std::vector<std::size_t> chosen_;
    const std::function<bool(const std::vector<std::size_t>&)>* leaf_ = nullptr;
};

// Set up the search for maps sending a short basis W of q2 into q1.
struct SearchSetup {
    std::vector<Vec> w;           // basis of q2, as columns
    std::vector<i64> target;      // W^T G2 W, scaled
    std::vector<Candidate> cands; // vectors of q1 with a matching norm
};

SearchSetup prepare(const QuadForm& q1, const QuadForm& q2) {
    const std::size_t g = q1.dim();
    const Integer scale = lcm(denominator_lcm(q1.gram()), denominator_lcm(q2.gram()));
    const IntGram g1 = integral_gram(q1, scale);
    const IntGram g2 = integral_gram(q2, scale);
    SearchSetup s;
    s.w = short_basis(q2);
    s.target.assign(g * g, 0);
    std::vector<Candidate> wc;
    for (const auto& v : s.w) wc.push_back(make_candidate(g2, v));
    std::set<i64> norms;
    i64 top = 0;
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) s.target[i * g + j] = inner(wc[i], wc[j]);
    for (std::size_t i = 0; i < g; ++i) {
        norms.insert(s.target[i * g + i]);
        top = std::max(top, s.target[i * g + i]);
    }
    Rational bound(top);
    bound /= scale;
    for (auto& v : signed_short_vectors(q1, bound)) {
        auto c = make_candidate(g1, std::move(v));
        if (norms.count(c.norm)) s.cands.push_back(std::move(c));
    }
    return s;
}

}  // namespace

std::optional<UnimodularMap> is_equivalent(const QuadForm& q1, const QuadForm& q2) {
    if (q1.dim() != q2.dim()) throw DimensionError("equivalence test: dimension mismatch");
    if (!is_positive_definite(q1) || !is_positive_definite(q2))
        throw DomainError("equivalence test needs positive definite forms");
    if (!(invariants(q1) == invariants(q2))) return std::nullopt;

    const std::size_t g = q1.dim();
    SearchSetup s = prepare(q1, q2);
    TupleSearch search(std::move(s.cands), s.target, g);
    std::optional<IntMatrix> image;
    search.run([&](const std::vector<std::size_t>& tuple) {
        std::vector<Vec> cols;
        for (auto k : tuple) cols.push_back(search.candidate(k).v);
        image = columns_to_matrix(cols);
        return true;
    });
    if (!image) return std::nullopt;
    // U' W^-1 maps q1 to q2.
    const UnimodularMap w(columns_to_matrix(s.w));
    UnimodularMap u = UnimodularMap(*image) * w.inverse();
    if (!(transform(q1, u) == q2)) throw std::logic_error("isometry witness failed re-verification");
    return u;
}

std::uint64_t automorphism_order(const QuadForm& q) {
    if (!is_positive_definite(q)) throw DomainError("automorphism group needs a positive definite form");
    SearchSetup s = prepare(q, q);
    TupleSearch search(std::move(s.cands), s.target, q.dim());
    std::uint64_t count = 0;
    search.run([&](const std::vector<std::size_t>&) {
        ++count;
        return false;
    });
    return count;
}

std::vector<UnimodularMap> automorphism_sample(const QuadForm& q, std::size_t count, std::uint64_t seed) {
    if (!is_positive_definite(q)) throw DomainError("automorphism group needs a positive definite form");
    SearchSetup s = prepare(q, q);
    const UnimodularMap w_inv = UnimodularMap(columns_to_matrix(s.w)).inverse();
    TupleSearch search(std::move(s.cands), s.target, q.dim());
    std::mt19937_64 rng(seed);
    std::vector<std::vector<std::size_t>> kept;
    std::uint64_t seen = 0;
    search.run([&](const std::vector<std::size_t>& tuple) {
        ++seen;
        if (kept.size() < count) {
            kept.push_back(tuple);
        } else {
            const std::uint64_t j = std::uniform_int_distribution<std::uint64_t>(0, seen - 1)(rng);
            if (j < count) kept[j] = tuple;
        }
        return false;
    });
    std::vector<UnimodularMap> out;
    for (const auto& tuple : kept) {
        std::vector<Vec> cols;
        for (auto k : tuple) cols.push_back(search.candidate(k).v);
        out.push_back(UnimodularMap(columns_to_matrix(cols)) * w_inv);
    }
    return out;
}

CanonicalForm canonical_form(const QuadForm& q) {
    if (!is_positive_definite(q)) throw DomainError("canonical form needs a positive definite form");
    const std::size_t g = q.dim();
    const Integer scale = denominator_lcm(q.gram());
    const IntGram gram = integral_gram(q, scale);

    // Norm levels in increasing order; vectors up to max diagonal always suffice.
    const Rational top = max_diagonal(q);
    std::vector<Candidate> all;
    for (auto& v : signed_short_vectors(q, top)) all.push_back(make_candidate(gram, std::move(v)));
    std::sort(all.begin(), all.end(), [](const Candidate& a, const Candidate& b) {
        return a.norm != b.norm ? a.norm < b.norm : a.v < b.v;
    });
    std::vector<i64> levels;
    for (const auto& c : all)
        if (levels.empty() || levels.back() != c.norm) levels.push_back(c.norm);

    for (i64 level : levels) {
        std::vector<const Candidate*> cands;
        for (const auto& c : all)
            if (c.norm <= level) cands.push_back(&c);

        // Flattened columns: (G_ii, G_0i, ..., G_{i-1,i}) for i = 0..g-1.
        std::vector<i64> best;
        std::vector<std::size_t> best_tuple;
        std::vector<std::size_t> tuple;
        std::vector<i64> current;
        std::vector<const Vec*> basis_ptrs;

        std::function<void(std::size_t)> recurse = [&](std::size_t i) {
            if (i == g) {
                if (best.empty() || current < best) {
                    best = current;
                    best_tuple = tuple;
                }
                return;
            }
            // Order candidates by their column so good leaves come first.
            std::vector<std::pair<std::vector<i64>, std::size_t>> options;
            for (std::size_t k = 0; k < cands.size(); ++k) {
                std::vector<i64> col{cands[k]->norm};
                for (std::size_t j = 0; j < i; ++j) col.push_back(inner(*cands[k], *cands[tuple[j]]));
                options.emplace_back(std::move(col), k);
            }
            std::sort(options.begin(), options.end());
            const std::size_t offset = current.size();
            for (auto& [col, k] : options) {
                current.insert(current.end(), col.begin(), col.end());
                // current never exceeds the best prefix, so extending by a
                // larger column than the best one can only be worse.
                const bool worse = !best.empty() && std::lexicographical_compare(
                    best.begin(), best.begin() + static_cast<long>(current.size()), current.begin(), current.end());
                if (worse) {
                    current.resize(offset);
                    break;
                }
                basis_ptrs.push_back(&cands[k]->v);
                if (extends_to_basis(basis_ptrs, g)) {
                    tuple.push_back(k);
                    recurse(i + 1);
                    tuple.pop_back();
                }
                basis_ptrs.pop_back();
                current.resize(offset);
            }
        };
        recurse(0);
        if (best.empty()) continue;

        std::vector<Vec> cols;
        for (auto k : best_tuple) cols.push_back(cands[k]->v);
        UnimodularMap basis(columns_to_matrix(cols));
        return CanonicalForm{transform(q, basis), std::move(basis)};
    }
    throw std::logic_error("canonical form: no basis found among short vectors");
}

}  // namespace voronoi
