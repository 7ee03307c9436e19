#include "voronoi/exact.hpp"

#include <algorithm>
#include <numeric>

namespace voronoi {

RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
    return r;
}

// ---------------------------------------------------------------- IntVector

IntVector::IntVector(std::initializer_list<long> coords) {
    coords_.reserve(coords.size());
    for (long c : coords) coords_.emplace_back(c);
}

bool IntVector::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Integer& c) { return c == 0; });
}

bool IntVector::is_primitive() const {
    Integer g = 0;
    for (const auto& c : coords_) g = gcd(g, c);
    return g == 1;
}

IntVector IntVector::negated() const {
    std::vector<Integer> n(coords_.size());
    for (std::size_t i = 0; i < coords_.size(); ++i) n[i] = -coords_[i];
    return IntVector(std::move(n));
}

IntVector IntVector::canonical_sign() const {
    for (const auto& c : coords_) {
        if (c > 0) return *this;
        if (c < 0) return negated();
    }
    return *this;
}

// ---------------------------------------------------------- SymLatticePoint

SymLatticePoint::SymLatticePoint(IntMatrix entries, bool primitive_rank1)
    : entries_(std::move(entries)), primitive_rank1_(primitive_rank1) {
    if (!entries_.is_symmetric()) throw DomainError("lattice point must be a symmetric matrix");
}

SymLatticePoint SymLatticePoint::from_coords(std::size_t g, const std::vector<Integer>& coords) {
    if (coords.size() != sym_dim(g)) throw DimensionError("coordinate vector has wrong length");
    IntMatrix m(g, g);
    std::size_t k = 0;
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = i; j < g; ++j) {
            m(i, j) = coords[k];
            m(j, i) = coords[k];
            ++k;
        }
    return SymLatticePoint(std::move(m));
}

std::vector<Integer> SymLatticePoint::coords() const {
    const std::size_t g = dim();
    std::vector<Integer> c;
    c.reserve(sym_dim(g));
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = i; j < g; ++j) c.push_back(entries_(i, j));
    return c;
}

// ------------------------------------------------------------ UnimodularMap

UnimodularMap::UnimodularMap(IntMatrix u) : u_(std::move(u)) {
    if (u_.rows() != u_.cols()) throw DimensionError("unimodular map must be square");
    const Integer d = determinant(u_);
    if (d != 1 && d != -1) throw DomainError("matrix is not unimodular (det = " + d.get_str() + ")");
}

UnimodularMap UnimodularMap::inverse() const {
    // Gauss-Jordan over Q; the result is integral because det = +-1.
    const std::size_t n = u_.rows();
    RatMatrix a = to_rational(u_);
    RatMatrix inv = RatMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (a(p, c) == 0) ++p;
        if (p != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(p, j), a(c, j));
                std::swap(inv(p, j), inv(c, j));
            }
        const Rational piv = a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) /= piv;
            inv(c, j) /= piv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a(r, c) == 0) continue;
            const Rational f = a(r, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    IntMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = inv(i, j).get_num();
    return UnimodularMap(std::move(out));
}

// ----------------------------------------------------------------- QuadForm

QuadForm::QuadForm(RatMatrix gram) : gram_(std::move(gram)) {
    if (gram_.rows() == 0) throw DomainError("quadratic form needs at least one variable");
    if (!gram_.is_symmetric()) throw DomainError("Gram matrix is not symmetric");
    for (std::size_t i = 0; i < gram_.rows(); ++i)
        for (std::size_t j = 0; j < gram_.cols(); ++j) gram_(i, j).canonicalize();
}

Rational QuadForm::value(const IntVector& x) const { return bilinear(x, x); }

Rational QuadForm::bilinear(const IntVector& x, const IntVector& y) const {
    if (x.dim() != dim() || y.dim() != dim()) throw DimensionError("vector length differs from form dimension");
    Rational s = 0;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (x[i] == 0) continue;
        Rational row = 0;
        for (std::size_t j = 0; j < dim(); ++j)
            if (y[j] != 0) row += gram_(i, j) * y[j];
        s += row * x[i];
    }
    return s;
}

Rational QuadForm::determinant() const { return voronoi::determinant(gram_); }

QuadForm QuadForm::scaled(const Rational& c) const {
    RatMatrix m = gram_;
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j) m(i, j) *= c;
    return QuadForm(std::move(m));
}

bool QuadForm::is_integral() const {
    return std::all_of(gram_.data().begin(), gram_.data().end(),
                       [](const Rational& r) { return r.get_den() == 1; });
}

QuadForm root_form_a(std::size_t g) {
    RatMatrix m(g, g);
    for (std::size_t i = 0; i < g; ++i) {
        m(i, i) = 2;
        if (i + 1 < g) m(i, i + 1) = m(i + 1, i) = -1;
    }
    return QuadForm(std::move(m));
}

QuadForm root_form_d(std::size_t g) {
    if (g < 3) throw DomainError("D_g needs g >= 3");
    RatMatrix m(g, g);
    for (std::size_t i = 0; i < g; ++i) m(i, i) = 2;
    // Nodes 0 and 1 hang off node 2; nodes 2..g-1 form a chain.
    m(0, 2) = m(2, 0) = -1;
    m(1, 2) = m(2, 1) = -1;
    for (std::size_t i = 2; i + 1 < g; ++i) m(i, i + 1) = m(i + 1, i) = -1;
    return QuadForm(std::move(m));
}

// --------------------------------------------------------------- operations

Rational pair(const QuadForm& q, const RatMatrix& b) {
    if (b.rows() != q.dim() || b.cols() != q.dim()) throw DimensionError("pairing: dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < q.dim(); ++i)
        for (std::size_t j = 0; j < q.dim(); ++j)
            if (b(i, j) != 0) s += q(i, j) * b(i, j);
    return s;
}

Rational pair(const QuadForm& q, const SymLatticePoint& b) {
    if (b.dim() != q.dim()) throw DimensionError("pairing: dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < q.dim(); ++i)
        for (std::size_t j = 0; j < q.dim(); ++j)
            if (b(i, j) != 0) s += q(i, j) * b(i, j);
    return s;
}

SymLatticePoint rank1(const IntVector& x) {
    if (x.is_zero()) throw DomainError("rank1 of the zero vector");
    const std::size_t g = x.dim();
    IntMatrix m(g, g);
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) m(i, j) = x[i] * x[j];
    return SymLatticePoint(std::move(m), x.is_primitive());
}

DefinitenessResult definiteness(const QuadForm& q) {
    // Symmetric elimination with diagonal pivots. A PSD matrix with a zero
    // diagonal entry has that whole row zero, so a zero diagonal next to a
    // nonzero off-diagonal entry certifies indefiniteness.
    const std::size_t n = q.dim();
    RatMatrix a = q.gram();
    std::vector<bool> done(n, false);
    std::size_t r = 0;
    for (;;) {
        std::optional<std::size_t> piv;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i]) continue;
            if (a(i, i) < 0) return {Definiteness::Indefinite, 0};
            if (a(i, i) > 0 && !piv) piv = i;
        }
        if (!piv) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (!done[i] && !done[j] && a(i, j) != 0) return {Definiteness::Indefinite, 0};
            break;
        }
        const std::size_t p = *piv;
        done[p] = true;
        ++r;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || a(i, p) == 0) continue;
            const Rational f = a(i, p) / a(p, p);
            for (std::size_t j = 0; j < n; ++j)
                if (!done[j]) a(i, j) -= f * a(p, j);
        }
    }
    return {r == n ? Definiteness::PositiveDefinite : Definiteness::PositiveSemidefinite, r};
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& a) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < a.cols() && row < a.rows(); ++c) {
        std::size_t p = row;
        while (p < a.rows() && a(p, c) == 0) ++p;
        if (p == a.rows()) continue;
        if (p != row)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(row, j));
        const Rational piv = a(row, c);
        for (std::size_t j = c; j < a.cols(); ++j) a(row, j) /= piv;
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == row || a(r, c) == 0) continue;
            const Rational f = a(r, c);
            for (std::size_t j = c; j < a.cols(); ++j) a(r, j) -= f * a(row, j);
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

}  // namespace

std::vector<std::vector<Rational>> kernel_basis(const QuadForm& q) {
    RatMatrix a = q.gram();
    const auto pivots = rref(a);
    const std::size_t n = a.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(n, Rational(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

QuadForm transform(const QuadForm& q, const UnimodularMap& u) {
    if (u.dim() != q.dim()) throw DimensionError("transform: dimension mismatch");
    const RatMatrix ur = to_rational(u.matrix());
    return QuadForm(ur.transposed() * q.gram() * ur);
}

SymLatticePoint transform(const SymLatticePoint& b, const UnimodularMap& u) {
    if (u.dim() != b.dim()) throw DimensionError("transform: dimension mismatch");
    return SymLatticePoint(u.matrix() * b.entries() * u.matrix().transposed(), b.primitive_rank1());
}

Integer determinant(const IntMatrix& m) {
    // Bareiss fraction-free elimination.
    if (m.rows() != m.cols()) throw DimensionError("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(k, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                a(i, j) = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
            }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

Rational determinant(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("determinant of a non-square matrix");
    RatMatrix a = m;
    const std::size_t n = a.rows();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a(r, c) == 0) continue;
            const Rational f = a(r, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
        }
    }
    return det;
}

std::size_t rank(const RatMatrix& m) {
    RatMatrix a = m;
    return rref(a).size();
}

std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

std::optional<std::vector<Rational>> solve_unique(const RatMatrix& a, const std::vector<Rational>& b) {
    if (b.size() != a.rows()) throw DimensionError("solve: right-hand side length mismatch");
    RatMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    const auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;  // inconsistent
    if (pivots.size() != a.cols()) return std::nullopt;                     // underdetermined
    std::vector<Rational> x(a.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
    return x;
}

QuadForm block_sum(const QuadForm& a, const QuadForm& b) {
    const std::size_t n = a.dim() + b.dim();
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j) m(a.dim() + i, a.dim() + j) = b(i, j);
    return QuadForm(std::move(m));
}

Integer denominator_lcm(const RatMatrix& m) {
    Integer l = 1;
    for (const auto& v : m.data()) l = lcm(l, Integer(v.get_den()));
    return l;
}

}  // namespace voronoi
