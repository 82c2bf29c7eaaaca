#include <nccr/error.hpp>
#include <nccr/lattice.hpp>

#include <algorithm>

namespace nccr {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) fail(ErrorCode::DimensionMismatch, "row length differs from column count");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& cols, std::size_t rows) {
    IntMatrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows) fail(ErrorCode::DimensionMismatch, "column length differs from row count");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
}

IntVector IntMatrix::row(std::size_t r) const {
    return IntVector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

IntVector IntMatrix::column(std::size_t c) const {
    IntVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) fail(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
    IntMatrix p(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) p(i, j) += a * o(k, j);
        }
    return p;
}

IntVector IntMatrix::operator*(const IntVector& v) const {
    if (cols_ != v.size()) fail(ErrorCode::DimensionMismatch, "matrix-vector shape mismatch");
    IntVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) out[i] += (*this)(i, k) * v[k];
    return out;
}

bool IntMatrix::operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t a, std::size_t b, const Int& k) {
    if (k == 0) return;
    for (std::size_t c = 0; c < cols_; ++c) (*this)(a, c) += k * (*this)(b, c);
}

void IntMatrix::add_col_multiple(std::size_t a, std::size_t b, const Int& k) {
    if (k == 0) return;
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, a) += k * (*this)(r, b);
}

void IntMatrix::negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

void IntMatrix::negate_col(std::size_t c) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
}

SmithDecomposition smith_normal_form(const IntMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    IntMatrix d = a;
    IntMatrix u = IntMatrix::identity(m);
    IntMatrix v = IntMatrix::identity(n);
    const std::size_t k = std::min(m, n);
    for (std::size_t t = 0; t < k; ++t) {
        bool all_zero = false;
        while (true) {
            std::size_t pi = m, pj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    if (d(i, j) == 0) continue;
                    if (pi == m || abs(d(i, j)) < abs(d(pi, pj))) { pi = i; pj = j; }
                }
            if (pi == m) { all_zero = true; break; }
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (d(i, t) == 0) continue;
                Int q = floor_div(d(i, t), d(t, t));
                d.add_row_multiple(i, t, -q);
                u.add_row_multiple(i, t, -q);
                if (d(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (d(t, j) == 0) continue;
                Int q = floor_div(d(t, j), d(t, t));
                d.add_col_multiple(j, t, -q);
                v.add_col_multiple(j, t, -q);
                if (d(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (d(i, j) % d(t, t) != 0) { bad = i; break; }
            if (bad == m) break;
            d.add_row_multiple(t, bad, 1);
            u.add_row_multiple(t, bad, 1);
        }
        if (all_zero) break;
        if (d(t, t) < 0) {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithDecomposition out{u, v, IntVector(k)};
    for (std::size_t t = 0; t < k; ++t) out.diag[t] = d(t, t);
    return out;
}

Int AbelianGroup::torsion_order() const {
    Int p = 1;
    for (const auto& t : torsion) p *= t;
    return p;
}

std::vector<IntVector> AbelianGroup::torsion_elements() const {
    std::vector<IntVector> out;
    IntVector cur(torsion.size());
    while (true) {
        out.push_back(cur);
        std::size_t i = torsion.size();
        while (i > 0) {
            --i;
            cur[i] += 1;
            if (cur[i] < torsion[i]) break;
            cur[i] = 0;
            if (i == 0) return out;
        }
        if (torsion.empty()) return out;
    }
}

AbelianGroup cokernel_presentation(const IntMatrix& a) {
    SmithDecomposition s = smith_normal_form(a);
    AbelianGroup g;
    std::size_t nonzero = 0;
    for (const auto& d : s.diag) {
        if (d == 0) continue;
        ++nonzero;
        if (d > 1) g.torsion.push_back(d);
    }
    g.free_rank = a.rows() - nonzero;
    return g;
}

LatticeEmbedding LatticeEmbedding::identity(std::size_t n) { return {n, IntMatrix::identity(n)}; }

Int LatticeEmbedding::index() const { return abs(determinant(basis)); }

RatVector LatticeEmbedding::rational_coordinates(const IntVector& v) const {
    std::vector<RatVector> rows(ambient_dim, RatVector(ambient_dim));
    for (std::size_t r = 0; r < ambient_dim; ++r)
        for (std::size_t c = 0; c < ambient_dim; ++c) rows[r][c] = basis(r, c);
    auto sol = solve_rational(rows, to_rational(v));
    if (!sol) fail(ErrorCode::Degenerate, "sublattice basis is singular");
    return *sol;
}

std::optional<IntVector> LatticeEmbedding::coordinates(const IntVector& v) const {
    RatVector q = rational_coordinates(v);
    IntVector out(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i].get_den() != 1) return std::nullopt;
        out[i] = q[i].get_num();
    }
    return out;
}

IntMatrix LatticeEmbedding::hermite_basis() const { return hermite_normal_form(basis.transpose()); }

bool LatticeEmbedding::same_lattice(const LatticeEmbedding& o) const {
    return ambient_dim == o.ambient_dim && hermite_basis() == o.hermite_basis();
}

AbelianGroup lattice_quotient(const LatticeEmbedding& e) {
    if (determinant(e.basis) == 0) fail(ErrorCode::Degenerate, "sublattice is not full rank");
    return cokernel_presentation(e.basis);
}

IntVector primitive_vector(const IntVector& v) {
    Int g = gcd_of(v);
    if (g == 0) fail(ErrorCode::InvalidArgument, "zero vector has no primitive generator");
    IntVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
    return r;
}

bool is_primitive(const IntVector& v) { return gcd_of(v) == 1; }

Int determinant(const IntMatrix& a) {
    if (a.rows() != a.cols()) fail(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMatrix m = a;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t s = k + 1;
            while (s < n && m(s, k) == 0) ++s;
            if (s == n) return 0;
            m.swap_rows(k, s);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& a) {
    std::vector<RatVector> rows(a.rows(), RatVector(a.cols()));
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) rows[r][c] = a(r, c);
    return rank_rational(std::move(rows));
}

IntMatrix hermite_normal_form(const IntMatrix& input) {
    IntMatrix h = input;
    const std::size_t m = h.rows(), n = h.cols();
    std::size_t r = 0;
    for (std::size_t j = 0; j < n && r < m; ++j) {
        while (true) {
            std::size_t best = m;
            std::size_t count = 0;
            for (std::size_t i = r; i < m; ++i) {
                if (h(i, j) == 0) continue;
                ++count;
                if (best == m || abs(h(i, j)) < abs(h(best, j))) best = i;
            }
            if (best == m) break;
            h.swap_rows(r, best);
            if (count == 1) break;
            for (std::size_t i = r + 1; i < m; ++i) {
                if (h(i, j) == 0) continue;
                h.add_row_multiple(i, r, -floor_div(h(i, j), h(r, j)));
            }
        }
        if (h(r, j) == 0) continue;
        if (h(r, j) < 0) h.negate_row(r);
        for (std::size_t i = 0; i < r; ++i) h.add_row_multiple(i, r, -floor_div(h(i, j), h(r, j)));
        ++r;
    }
    IntMatrix out(r, n);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = h(i, j);
    return out;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<RatVector>& a, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[r]);
        Rational inv = 1 / a[r][c];
        for (auto& x : a[r]) x *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rational f = a[i][c];
            for (std::size_t k = 0; k < a[i].size(); ++k) a[i][k] -= f * a[r][k];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::size_t rank_rational(std::vector<RatVector> a) {
    if (a.empty()) return 0;
    return rref(a, a[0].size()).size();
}

std::optional<RatVector> solve_rational(const std::vector<RatVector>& a, const RatVector& b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<RatVector> aug(rows, RatVector(cols + 1));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) aug[r][c] = a[r][c];
        aug[r][cols] = b[r];
    }
    auto piv = rref(aug, cols + 1);
    if (!piv.empty() && piv.back() == cols) return std::nullopt;
    RatVector x(cols);
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug[i][cols];
    return x;
}

std::vector<RatVector> nullspace(const std::vector<RatVector>& a, std::size_t cols) {
    std::vector<RatVector> m = a;
    auto piv = rref(m, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : piv) is_pivot[p] = true;
    std::vector<RatVector> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        RatVector v(cols);
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace nccr
