#pragma once

// Exact rational linear algebra on symmetric matrices and integer vectors.
//
// Every value here is immutable once built and every free function is pure,
// so instances may be shared freely between threads for reading.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace voronoi {

using Integer = mpz_class;
using Rational = mpq_class;

/** Raised when operand dimensions do not agree. */
class DimensionError : public std::invalid_argument {
public:
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/** Raised when an input violates a mathematical precondition. */
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/** Dense row-major matrix over an exact scalar type. */
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
    Matrix(std::initializer_list<std::initializer_list<T>> rows);

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    bool is_zero() const {
        for (const auto& v : data_)
            if (v != 0) return false;
        return true;
    }

    const std::vector<T>& data() const { return data_; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator<(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
        if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
        return a.data_ < b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <class T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<T>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionError("ragged matrix literal");
        for (const auto& v : r) data_.push_back(v);
    }
}

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows()) throw DimensionError("matrix product: inner dimensions differ");
    Matrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

RatMatrix to_rational(const IntMatrix& m);

/** Integer vector in Z^g. */
class IntVector {
public:
    IntVector() = default;
    explicit IntVector(std::vector<Integer> coords) : coords_(std::move(coords)) {}
    IntVector(std::initializer_list<long> coords);

    std::size_t dim() const { return coords_.size(); }
    const Integer& operator[](std::size_t i) const { return coords_[i]; }
    const std::vector<Integer>& coords() const { return coords_; }

    bool is_zero() const;
    /** gcd of the coordinates is 1. */
    bool is_primitive() const;
    IntVector negated() const;
    /** Representative of {x, -x} whose first nonzero coordinate is positive. */
    IntVector canonical_sign() const;

    friend bool operator==(const IntVector& a, const IntVector& b) { return a.coords_ == b.coords_; }
    friend bool operator<(const IntVector& a, const IntVector& b) { return a.coords_ < b.coords_; }

private:
    std::vector<Integer> coords_;
};

/** Number of independent entries of a symmetric g x g matrix. */
constexpr std::size_t sym_dim(std::size_t g) { return g * (g + 1) / 2; }

/**
 * Symmetric integer matrix, a point of the lattice of symmetric bilinear forms.
 *
 * Coordinates are the upper triangle in row-major order:
 * (B11, B12, ..., B1g, B22, ..., Bgg).
 */
class SymLatticePoint {
public:
    SymLatticePoint() = default;
    explicit SymLatticePoint(IntMatrix entries, bool primitive_rank1 = false);
    static SymLatticePoint from_coords(std::size_t g, const std::vector<Integer>& coords);

    std::size_t dim() const { return entries_.rows(); }
    const IntMatrix& entries() const { return entries_; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
    std::vector<Integer> coords() const;
    /** Set when built by rank1() from a primitive vector. */
    bool primitive_rank1() const { return primitive_rank1_; }

    friend bool operator==(const SymLatticePoint& a, const SymLatticePoint& b) {
        return a.entries_ == b.entries_;
    }
    friend bool operator<(const SymLatticePoint& a, const SymLatticePoint& b) {
        return a.entries_ < b.entries_;
    }

private:
    IntMatrix entries_;
    bool primitive_rank1_ = false;
};

/** Element of GL_g(Z), acting on forms by G -> U^T G U. */
class UnimodularMap {
public:
    explicit UnimodularMap(IntMatrix u);
    static UnimodularMap identity(std::size_t g) { return UnimodularMap(IntMatrix::identity(g)); }

    std::size_t dim() const { return u_.rows(); }
    const IntMatrix& matrix() const { return u_; }
    UnimodularMap inverse() const;

    friend UnimodularMap operator*(const UnimodularMap& a, const UnimodularMap& b) {
        return UnimodularMap(a.u_ * b.u_);
    }
    friend bool operator==(const UnimodularMap& a, const UnimodularMap& b) { return a.u_ == b.u_; }

private:
    IntMatrix u_;
};

enum class Definiteness { PositiveDefinite, PositiveSemidefinite, Indefinite };

struct DefinitenessResult {
    Definiteness kind;
    std::size_t rank;  // meaningful for the definite and semidefinite cases
};

/** Quadratic form q(x) = x^T G x with a rational symmetric Gram matrix G. */
class QuadForm {
public:
    QuadForm() = default;
    explicit QuadForm(RatMatrix gram);
    explicit QuadForm(const IntMatrix& gram) : QuadForm(to_rational(gram)) {}

    std::size_t dim() const { return gram_.rows(); }
    const RatMatrix& gram() const { return gram_; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return gram_(i, j); }

    Rational value(const IntVector& x) const;
    Rational bilinear(const IntVector& x, const IntVector& y) const;
    Rational determinant() const;
    QuadForm scaled(const Rational& c) const;
    bool is_integral() const;

    friend bool operator==(const QuadForm& a, const QuadForm& b) { return a.gram_ == b.gram_; }
    friend bool operator<(const QuadForm& a, const QuadForm& b) { return a.gram_ < b.gram_; }

private:
    RatMatrix gram_;
};

/** Gram matrix of the A_g root lattice: 2 on the diagonal, -1 beside it. */
QuadForm root_form_a(std::size_t g);
/** Gram matrix of the D_g root lattice (g >= 3) in a simple-root basis. */
QuadForm root_form_d(std::size_t g);

/** <q, B> = sum_ij G_ij B_ij, so that <q, x x^T> = q(x). */
Rational pair(const QuadForm& q, const SymLatticePoint& b);
Rational pair(const QuadForm& q, const RatMatrix& b);

/** x x^T, flagged primitive iff x is. */
SymLatticePoint rank1(const IntVector& x);

DefinitenessResult definiteness(const QuadForm& q);
inline bool is_positive_definite(const QuadForm& q) {
    return definiteness(q).kind == Definiteness::PositiveDefinite;
}
/** Basis of the rational kernel of G (empty for nondegenerate forms). */
std::vector<std::vector<Rational>> kernel_basis(const QuadForm& q);

/** Form with Gram U^T G U. */
QuadForm transform(const QuadForm& q, const UnimodularMap& u);
/** U B U^T, the contragredient action on B(X_g). */
SymLatticePoint transform(const SymLatticePoint& b, const UnimodularMap& u);

Integer determinant(const IntMatrix& m);
Rational determinant(const RatMatrix& m);
std::size_t rank(const RatMatrix& m);
std::size_t rank(const IntMatrix& m);

/** Unique solution x of A x = b, or nullopt if none or not unique. */
std::optional<std::vector<Rational>> solve_unique(const RatMatrix& a, const std::vector<Rational>& b);

/** Block diagonal direct sum. */
QuadForm block_sum(const QuadForm& a, const QuadForm& b);

/** Least common multiple of all denominators in the Gram matrix. */
Integer denominator_lcm(const RatMatrix& m);

}  // namespace voronoi
