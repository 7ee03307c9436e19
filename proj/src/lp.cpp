#include "voronoi/lp.hpp"

namespace voronoi {

LinearProgram LinearProgram::equality_system(const RatMatrix& a, const std::vector<Rational>& b) {
    LinearProgram p;
    p.a = a;
    p.b = b;
    p.sense.assign(a.rows(), RowSense::Equal);
    p.c.assign(a.cols(), Rational(0));
    p.sign.assign(a.cols(), VarSign::NonNegative);
    return p;
}

void LinearProgram::validate() const {
    if (b.size() != a.rows() || sense.size() != a.rows())
        throw DimensionError("linear program: row data does not match constraint matrix");
    if (c.size() != a.cols() || sign.size() != a.cols())
        throw DimensionError("linear program: column data does not match constraint matrix");
}

namespace {

class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols) : t_(rows, cols + 1), basis_(rows) {}

    Rational& at(std::size_t i, std::size_t j) { return t_(i, j); }
    Rational& rhs(std::size_t i) { return t_(i, t_.cols() - 1); }
    std::size_t rows() const { return t_.rows(); }
    std::size_t cols() const { return t_.cols() - 1; }
    std::vector<std::size_t>& basis() { return basis_; }

    void pivot(std::size_t r, std::size_t c) {
        const Rational piv = t_(r, c);
        for (std::size_t j = 0; j < t_.cols(); ++j)
            if (t_(r, j) != 0) t_(r, j) /= piv;
        for (std::size_t i = 0; i < t_.rows(); ++i) {
            if (i == r || t_(i, c) == 0) continue;
            const Rational f = t_(i, c);
            for (std::size_t j = 0; j < t_.cols(); ++j)
                if (t_(r, j) != 0) t_(i, j) -= f * t_(r, j);
        }
        basis_[r] = c;
    }

    Rational reduced_cost(const std::vector<Rational>& cost, std::size_t j) const {
        Rational d = cost[j];
        for (std::size_t i = 0; i < t_.rows(); ++i)
            if (cost[basis_[i]] != 0 && t_(i, j) != 0) d -= cost[basis_[i]] * t_(i, j);
        return d;
    }

    // Bland: least entering index, then least basic index among ratio ties.
    // Returns false when optimal; sets `unbounded_col` if the entering column
    // has no positive entry.
    bool step(const std::vector<Rational>& cost, std::size_t allowed_cols, std::optional<std::size_t>& unbounded_col) {
        std::optional<std::size_t> enter;
        for (std::size_t j = 0; j < allowed_cols; ++j) {
            if (is_basic(j)) continue;
            if (reduced_cost(cost, j) < 0) {
                enter = j;
                break;
            }
        }
        if (!enter) return false;
        std::optional<std::size_t> leave;
        Rational best;
        for (std::size_t i = 0; i < t_.rows(); ++i) {
            if (t_(i, *enter) <= 0) continue;
            Rational ratio = rhs_c(i) / t_(i, *enter);
            if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (!leave) {
            unbounded_col = enter;
            return false;
        }
        pivot(*leave, *enter);
        return true;
    }

    bool is_basic(std::size_t j) const {
        for (auto b : basis_)
            if (b == j) return true;
        return false;
    }

    const Rational& rhs_c(std::size_t i) const { return t_(i, t_.cols() - 1); }
    const Rational& at_c(std::size_t i, std::size_t j) const { return t_(i, j); }

private:
    RatMatrix t_;
    std::vector<std::size_t> basis_;
};

struct ColumnMap {
    std::size_t var;  // original variable, or npos for slacks
    int sign;
};

}  // namespace

LpResult lp_solve(const LinearProgram& p) {
    p.validate();
    const std::size_t m = p.num_rows();
    const std::size_t n = p.num_vars();

    std::vector<ColumnMap> colmap;
    for (std::size_t j = 0; j < n; ++j) {
        colmap.push_back({j, 1});
        if (p.sign[j] == VarSign::Free) colmap.push_back({j, -1});
    }
    const std::size_t n_struct = colmap.size();
    std::vector<std::size_t> slack_row;
    for (std::size_t i = 0; i < m; ++i)
        if (p.sense[i] != RowSense::Equal) slack_row.push_back(i);
    const std::size_t n_real = n_struct + slack_row.size();
    const std::size_t n_total = n_real + m;

    std::vector<int> row_sign(m, 1);
    for (std::size_t i = 0; i < m; ++i)
        if (p.b[i] < 0) row_sign[i] = -1;

    Tableau t(m, n_total);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < n_struct; ++k)
            t.at(i, k) = row_sign[i] * colmap[k].sign * p.a(i, colmap[k].var);
        t.rhs(i) = row_sign[i] * p.b[i];
        t.at(i, n_real + i) = 1;
        t.basis()[i] = n_real + i;
    }
    for (std::size_t s = 0; s < slack_row.size(); ++s) {
        const std::size_t i = slack_row[s];
        t.at(i, n_struct + s) = row_sign[i] * (p.sense[i] == RowSense::LessEqual ? 1 : -1);
    }

    // Phase 1.
    std::vector<Rational> phase1(n_total, Rational(0));
    for (std::size_t i = 0; i < m; ++i) phase1[n_real + i] = 1;
    std::optional<std::size_t> unb;
    while (t.step(phase1, n_total, unb)) {
    }
    Rational infeas = 0;
    for (std::size_t i = 0; i < m; ++i) infeas += phase1[t.basis()[i]] * t.rhs_c(i);
    if (infeas > 0) {
        std::vector<Rational> y(m, Rational(0));
        for (std::size_t k = 0; k < m; ++k)
            for (std::size_t i = 0; i < m; ++i)
                if (phase1[t.basis()[i]] != 0) y[k] += phase1[t.basis()[i]] * t.at_c(i, n_real + k);
        LpInfeasible cert;
        cert.multipliers.resize(m);
        for (std::size_t i = 0; i < m; ++i) cert.multipliers[i] = -y[i] * row_sign[i];
        return cert;
    }

    // Drive zero-level artificials out of the basis where possible.
    for (std::size_t i = 0; i < m; ++i) {
        if (t.basis()[i] < n_real) continue;
        for (std::size_t j = 0; j < n_real; ++j)
            if (t.at_c(i, j) != 0 && !t.is_basic(j)) {
                t.pivot(i, j);
                break;
            }
    }

    // Phase 2.
    std::vector<Rational> cost(n_total, Rational(0));
    for (std::size_t k = 0; k < n_struct; ++k) cost[k] = colmap[k].sign * p.c[colmap[k].var];

    auto extract = [&](auto&& column_value) {
        std::vector<Rational> x(n, Rational(0));
        for (std::size_t k = 0; k < n_struct; ++k) x[colmap[k].var] += colmap[k].sign * column_value(k);
        return x;
    };
    auto basic_value = [&](std::size_t col) -> Rational {
        for (std::size_t i = 0; i < m; ++i)
            if (t.basis()[i] == col) return t.rhs_c(i);
        return 0;
    };

    unb.reset();
    while (t.step(cost, n_real, unb)) {
    }
    auto point = extract(basic_value);
    if (unb) {
        const std::size_t e = *unb;
        auto ray_value = [&](std::size_t col) -> Rational {
            if (col == e) return 1;
            for (std::size_t i = 0; i < m; ++i)
                if (t.basis()[i] == col) return -t.at_c(i, e);
            return 0;
        };
        return LpUnbounded{std::move(point), extract(ray_value)};
    }
    Rational value = 0;
    for (std::size_t j = 0; j < n; ++j) value += p.c[j] * point[j];
    return LpOptimal{std::move(point), value};
}

namespace {

Rational row_dot(const RatMatrix& a, std::size_t i, const std::vector<Rational>& x) {
    Rational s = 0;
    for (std::size_t j = 0; j < a.cols(); ++j)
        if (a(i, j) != 0) s += a(i, j) * x[j];
    return s;
}

}  // namespace

bool verify_feasible(const LinearProgram& p, const std::vector<Rational>& x) {
    if (x.size() != p.num_vars()) return false;
    for (std::size_t j = 0; j < p.num_vars(); ++j)
        if (p.sign[j] == VarSign::NonNegative && x[j] < 0) return false;
    for (std::size_t i = 0; i < p.num_rows(); ++i) {
        const Rational lhs = row_dot(p.a, i, x);
        switch (p.sense[i]) {
            case RowSense::Equal:
                if (lhs != p.b[i]) return false;
                break;
            case RowSense::LessEqual:
                if (lhs > p.b[i]) return false;
                break;
            case RowSense::GreaterEqual:
                if (lhs < p.b[i]) return false;
                break;
        }
    }
    return true;
}

bool verify_certificate(const LinearProgram& p, const LpInfeasible& cert) {
    const auto& y = cert.multipliers;
    if (y.size() != p.num_rows()) return false;
    for (std::size_t i = 0; i < p.num_rows(); ++i) {
        if (p.sense[i] == RowSense::LessEqual && y[i] < 0) return false;
        if (p.sense[i] == RowSense::GreaterEqual && y[i] > 0) return false;
    }
    for (std::size_t j = 0; j < p.num_vars(); ++j) {
        Rational s = 0;
        for (std::size_t i = 0; i < p.num_rows(); ++i) s += y[i] * p.a(i, j);
        if (p.sign[j] == VarSign::NonNegative ? s < 0 : s != 0) return false;
    }
    Rational yb = 0;
    for (std::size_t i = 0; i < p.num_rows(); ++i) yb += y[i] * p.b[i];
    return yb < 0;
}

bool verify_ray(const LinearProgram& p, const LpUnbounded& u) {
    if (!verify_feasible(p, u.point) || u.ray.size() != p.num_vars()) return false;
    for (std::size_t j = 0; j < p.num_vars(); ++j)
        if (p.sign[j] == VarSign::NonNegative && u.ray[j] < 0) return false;
    for (std::size_t i = 0; i < p.num_rows(); ++i) {
        const Rational lhs = row_dot(p.a, i, u.ray);
        if (p.sense[i] == RowSense::Equal && lhs != 0) return false;
        if (p.sense[i] == RowSense::LessEqual && lhs > 0) return false;
        if (p.sense[i] == RowSense::GreaterEqual && lhs < 0) return false;
    }
    Rational cd = 0;
    for (std::size_t j = 0; j < p.num_vars(); ++j) cd += p.c[j] * u.ray[j];
    return cd < 0;
}

}  // namespace voronoi
