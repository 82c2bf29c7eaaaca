#pragma once

#include <nccr/integer.hpp>

#include <optional>
#include <vector>

namespace nccr {

// Dense row-major integer matrix.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
    static IntMatrix from_columns(const std::vector<IntVector>& cols, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntVector row(std::size_t r) const;
    IntVector column(std::size_t c) const;
    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& o) const;
    IntVector operator*(const IntVector& v) const;
    bool operator==(const IntMatrix& o) const;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    // row a += k * row b
    void add_row_multiple(std::size_t a, std::size_t b, const Int& k);
    void add_col_multiple(std::size_t a, std::size_t b, const Int& k);
    void negate_row(std::size_t r);
    void negate_col(std::size_t c);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> data_;
};

// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... (zeros last).
struct SmithDecomposition {
    IntMatrix left;   // U
    IntMatrix right;  // V
    IntVector diag;   // min(rows, cols) entries
};

SmithDecomposition smith_normal_form(const IntMatrix& a);

// Finitely generated abelian group Z^free_rank + sum Z/torsion_i with every torsion_i > 1.
struct AbelianGroup {
    std::size_t free_rank = 0;
    IntVector torsion;
    bool operator==(const AbelianGroup& o) const { return free_rank == o.free_rank && torsion == o.torsion; }
    Int torsion_order() const;
    // Every torsion element as a vector of residues.
    std::vector<IntVector> torsion_elements() const;
};

// Z^rows / A Z^cols.
AbelianGroup cokernel_presentation(const IntMatrix& a);

// Full-rank sublattice N' of Z^n, stored by the basis columns.
struct LatticeEmbedding {
    std::size_t ambient_dim = 0;
    IntMatrix basis;  // ambient_dim x ambient_dim, columns are the generators

    static LatticeEmbedding identity(std::size_t n);
    Int index() const;
    // Coordinates in the basis; nullopt when v is not in the sublattice.
    std::optional<IntVector> coordinates(const IntVector& v) const;
    RatVector rational_coordinates(const IntVector& v) const;
    IntMatrix hermite_basis() const;
    bool same_lattice(const LatticeEmbedding& o) const;
};

AbelianGroup lattice_quotient(const LatticeEmbedding& e);

IntVector primitive_vector(const IntVector& v);
bool is_primitive(const IntVector& v);

Int determinant(const IntMatrix& a);
std::size_t rank(const IntMatrix& a);

// Row-style Hermite normal form of the lattice spanned by the rows (zero rows dropped).
IntMatrix hermite_normal_form(const IntMatrix& rows);

// Solves A x = b over the rationals.
std::optional<RatVector> solve_rational(const std::vector<RatVector>& a, const RatVector& b);
// Basis of the right null space of A over Q.
std::vector<RatVector> nullspace(const std::vector<RatVector>& a, std::size_t cols);
std::size_t rank_rational(std::vector<RatVector> a);

}  // namespace nccr
