#ifndef MULTIBORD_EXACT_MATRIX_HPP
#define MULTIBORD_EXACT_MATRIX_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "multibord/exact/coeff.hpp"

namespace multibord {

using RatVec = std::vector<Rat>;

// Dense exact matrix over a CoeffSystem. Desk-scale ranks only; no sparse
// or modular tricks. Entries are kept reduced in the system at all times.
class ExactMatrix {
  public:
    ExactMatrix() = default;
    ExactMatrix(CoeffSystem sys, std::size_t rows, std::size_t cols);

    static ExactMatrix identity(CoeffSystem sys, std::size_t n);
    static ExactMatrix from_rows(CoeffSystem sys, const std::vector<RatVec>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const CoeffSystem& system() const { return sys_; }

    const Rat& at(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, const Rat& v);

    ExactMatrix operator+(const ExactMatrix& o) const;
    ExactMatrix operator-(const ExactMatrix& o) const;
    ExactMatrix operator*(const ExactMatrix& o) const;
    ExactMatrix scaled(const Rat& c) const;
    ExactMatrix transposed() const;

    RatVec apply(const RatVec& x) const;  // matrix * column vector

    bool operator==(const ExactMatrix& o) const;
    bool is_zero() const;
    bool is_identity() const;

  private:
    CoeffSystem sys_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;

    Rat& mut(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    friend struct SnfResult;
    friend class MatrixOps;
};

// Smith normal form U*A*V = D with U, V unimodular and the diagonal of D a
// divisibility chain d_i | d_{i+1}. Defined for integer matrices only.
struct SnfResult {
    ExactMatrix U, D, V;
};

SnfResult smith_normal_form(const ExactMatrix& A);

// A*x = b over the matrix's coefficient system. Over Z, solvability means
// an integral solution. Returns nullopt when no solution exists.
std::optional<RatVec> solve_linear(const ExactMatrix& A, const RatVec& b);

// Basis of ker(A): a field basis over Q/F_p, a lattice basis over Z.
std::vector<RatVec> kernel_basis(const ExactMatrix& A);

std::size_t rank(const ExactMatrix& A);
Rat det(const ExactMatrix& A);                 // square matrices
std::optional<ExactMatrix> inverse(const ExactMatrix& A);  // inverse within the system

RatVec vec_add(const RatVec& a, const RatVec& b, const CoeffSystem& sys);
RatVec vec_scale(const Rat& c, const RatVec& a, const CoeffSystem& sys);
bool vec_is_zero(const RatVec& a);

}  // namespace multibord

#endif
