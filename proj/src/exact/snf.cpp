#include <algorithm>
#include <cstdlib>

#include "multibord/exact/matrix.hpp"

namespace multibord {

namespace {

// Integer working matrix with tracked row/column operations.
struct IntMat {
    std::size_t r, c;
    std::vector<Int> a;
    IntMat(std::size_t r_, std::size_t c_) : r(r_), c(c_), a(r_ * c_, Int(0)) {}
    Int& at(std::size_t i, std::size_t j) { return a[i * c + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a[i * c + j]; }
    static IntMat eye(std::size_t n) {
        IntMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    void row_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < c; ++k) std::swap(at(i, k), at(j, k));
    }
    void col_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < r; ++k) std::swap(at(k, i), at(k, j));
    }
    void row_add(std::size_t dst, std::size_t src, const Int& q) {  // row_dst += q*row_src
        if (q == 0) return;
        for (std::size_t k = 0; k < c; ++k) at(dst, k) += q * at(src, k);
    }
    void col_add(std::size_t dst, std::size_t src, const Int& q) {
        if (q == 0) return;
        for (std::size_t k = 0; k < r; ++k) at(k, dst) += q * at(k, src);
    }
    void row_neg(std::size_t i) {
        for (std::size_t k = 0; k < c; ++k) at(i, k) = -at(i, k);
    }
};

ExactMatrix to_exact(const IntMat& m, CoeffSystem sys) {
    ExactMatrix e(sys, m.r, m.c);
    for (std::size_t i = 0; i < m.r; ++i)
        for (std::size_t j = 0; j < m.c; ++j) e.set(i, j, Rat(m.at(i, j)));
    return e;
}

IntMat to_int(const ExactMatrix& m) {
    IntMat w(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Rat& v = m.at(i, j);
            if (!is_integer(v)) throw ModeError("Smith normal form requires integer entries");
            w.at(i, j) = rat_num(v);
        }
    return w;
}

// Deterministic pivot: smallest nonzero magnitude, ties by lowest (i, j).
bool find_pivot(const IntMat& w, std::size_t s, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    Int best = 0;
    for (std::size_t i = s; i < w.r; ++i)
        for (std::size_t j = s; j < w.c; ++j) {
            const Int& v = w.at(i, j);
            if (v == 0) continue;
            Int m = abs(v);
            if (!found || m < best) {
                found = true;
                best = m;
                pi = i;
                pj = j;
            }
        }
    return found;
}

}  // namespace

SnfResult smith_normal_form(const ExactMatrix& A) {
    if (A.system().kind != CoeffKind::Integers && A.system().kind != CoeffKind::Rationals)
        throw ModeError("Smith normal form is defined over Z");
    IntMat w = to_int(A);
    IntMat u = IntMat::eye(w.r);
    IntMat v = IntMat::eye(w.c);
    const std::size_t steps = std::min(w.r, w.c);

    for (std::size_t s = 0; s < steps; ++s) {
        for (;;) {
            std::size_t pi = s, pj = s;
            if (!find_pivot(w, s, pi, pj)) {
                s = steps;  // remaining block is zero
                break;
            }
            w.row_swap(s, pi);
            u.row_swap(s, pi);
            w.col_swap(s, pj);
            v.col_swap(s, pj);

            // Reduce the pivot column and row; a nonzero remainder becomes a
            // strictly smaller candidate and we reselect.
            bool smaller = false;
            for (std::size_t i = s + 1; i < w.r && !smaller; ++i) {
                if (w.at(i, s) == 0) continue;
                Int q = w.at(i, s) / w.at(s, s);
                w.row_add(i, s, -q);
                u.row_add(i, s, -q);
                if (w.at(i, s) != 0) smaller = true;
            }
            if (smaller) continue;
            for (std::size_t j = s + 1; j < w.c && !smaller; ++j) {
                if (w.at(s, j) == 0) continue;
                Int q = w.at(s, j) / w.at(s, s);
                w.col_add(j, s, -q);
                v.col_add(j, s, -q);
                if (w.at(s, j) != 0) smaller = true;
            }
            if (smaller) continue;

            // Pivot must divide every remaining entry for the chain property.
            bool fixed = false;
            for (std::size_t i = s + 1; i < w.r && !fixed; ++i)
                for (std::size_t j = s + 1; j < w.c && !fixed; ++j)
                    if (w.at(i, j) % w.at(s, s) != 0) {
                        w.row_add(s, i, Int(1));
                        u.row_add(s, i, Int(1));
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (s >= steps) break;
    }

    for (std::size_t s = 0; s < steps; ++s)
        if (w.at(s, s) < 0) {
            w.row_neg(s);
            u.row_neg(s);
        }

    auto sys = CoeffSystem::integers();
    return SnfResult{to_exact(u, sys), to_exact(w, sys), to_exact(v, sys)};
}

namespace {

// Reduced row echelon form over a field; returns pivot column per pivot row.
std::vector<std::size_t> rref_in_place(std::vector<RatVec>& m, const CoeffSystem& sys) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t lead = 0;
    for (std::size_t col = 0; col < cols && lead < rows; ++col) {
        std::size_t sel = rows;
        for (std::size_t i = lead; i < rows; ++i)
            if (m[i][col] != 0) {
                sel = i;
                break;
            }
        if (sel == rows) continue;
        std::swap(m[lead], m[sel]);
        Rat inv = sys.inverse(m[lead][col]);
        for (auto& x : m[lead]) x = sys.reduce(x * inv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == lead || m[i][col] == 0) continue;
            Rat f = m[i][col];
            for (std::size_t j = 0; j < cols; ++j) m[i][j] = sys.reduce(m[i][j] - f * m[lead][j]);
        }
        pivots.push_back(col);
        ++lead;
    }
    return pivots;
}

CoeffSystem field_of(const CoeffSystem& sys) {
    return sys.kind == CoeffKind::Integers ? CoeffSystem::rationals() : sys;
}

std::vector<RatVec> matrix_rows(const ExactMatrix& A) {
    std::vector<RatVec> rows(A.rows(), RatVec(A.cols()));
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) rows[i][j] = A.at(i, j);
    return rows;
}

}  // namespace

std::optional<RatVec> solve_linear(const ExactMatrix& A, const RatVec& b) {
    if (b.size() != A.rows()) throw DimensionError("solve_linear: rhs length mismatch");
    const CoeffSystem& sys = A.system();

    if (sys.kind == CoeffKind::Integers) {
        // U*A*V = D; solve D*y = U*b exactly, then x = V*y.
        SnfResult snf = smith_normal_form(A);
        RatVec ub = snf.U.apply(b);
        const std::size_t n = A.cols();
        RatVec y(n, Rat(0));
        const std::size_t steps = std::min(A.rows(), A.cols());
        for (std::size_t i = 0; i < A.rows(); ++i) {
            Rat d = i < steps ? snf.D.at(i, i) : Rat(0);
            if (d == 0) {
                if (ub[i] != 0) return std::nullopt;
            } else if (i < n) {
                Rat q = ub[i] / d;
                if (!is_integer(q)) return std::nullopt;
                y[i] = q;
            }
        }
        return snf.V.apply(y);
    }

    const CoeffSystem f = field_of(sys);
    auto rows = matrix_rows(A);
    for (std::size_t i = 0; i < A.rows(); ++i) rows[i].push_back(b[i]);
    auto pivots = rref_in_place(rows, f);
    const std::size_t n = A.cols();
    // Inconsistent iff a pivot lands in the augmented column.
    for (std::size_t k = 0; k < pivots.size(); ++k)
        if (pivots[k] == n) return std::nullopt;
    RatVec x(n, Rat(0));
    for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = rows[k][n];
    return x;
}

std::vector<RatVec> kernel_basis(const ExactMatrix& A) {
    const CoeffSystem& sys = A.system();
    if (sys.kind == CoeffKind::Integers) {
        SnfResult snf = smith_normal_form(A);
        std::vector<RatVec> basis;
        const std::size_t n = A.cols();
        const std::size_t steps = std::min(A.rows(), n);
        for (std::size_t j = 0; j < n; ++j) {
            Rat d = j < steps ? snf.D.at(j, j) : Rat(0);
            if (d != 0) continue;
            RatVec col(n);
            for (std::size_t i = 0; i < n; ++i) col[i] = snf.V.at(i, j);
            basis.push_back(std::move(col));
        }
        return basis;
    }
    const CoeffSystem f = field_of(sys);
    auto rows = matrix_rows(A);
    auto pivots = rref_in_place(rows, f);
    const std::size_t n = A.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<RatVec> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        RatVec v(n, Rat(0));
        v[free] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k)
            v[pivots[k]] = f.reduce(-rows[k][free]);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t rank(const ExactMatrix& A) {
    const CoeffSystem f = field_of(A.system());
    auto rows = matrix_rows(A);
    return rref_in_place(rows, f).size();
}

Rat det(const ExactMatrix& A) {
    if (A.rows() != A.cols()) throw DimensionError("determinant of non-square matrix");
    const std::size_t n = A.rows();
    const CoeffSystem f = field_of(A.system());
    auto m = matrix_rows(A);
    Rat d = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = n;
        for (std::size_t i = col; i < n; ++i)
            if (m[i][col] != 0) {
                sel = i;
                break;
            }
        if (sel == n) return Rat(0);
        if (sel != col) {
            std::swap(m[sel], m[col]);
            d = -d;
        }
        d = f.reduce(d * m[col][col]);
        Rat inv = f.inverse(m[col][col]);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m[i][col] == 0) continue;
            Rat fac = f.reduce(m[i][col] * inv);
            for (std::size_t j = col; j < n; ++j) m[i][j] = f.reduce(m[i][j] - fac * m[col][j]);
        }
    }
    return A.system().kind == CoeffKind::PrimeField ? A.system().reduce(d) : d;
}

std::optional<ExactMatrix> inverse(const ExactMatrix& A) {
    if (A.rows() != A.cols()) throw DimensionError("inverse of non-square matrix");
    const std::size_t n = A.rows();
    const CoeffSystem f = field_of(A.system());
    auto rows = matrix_rows(A);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) rows[i].push_back(Rat(i == j ? 1 : 0));
    auto pivots = rref_in_place(rows, f);
    if (pivots.size() != n) return std::nullopt;
    for (std::size_t k = 0; k < n; ++k)
        if (pivots[k] != k) return std::nullopt;
    ExactMatrix inv(A.system(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Rat& v = rows[i][n + j];
            if (A.system().kind == CoeffKind::Integers && !is_integer(v)) return std::nullopt;
            inv.set(i, j, v);
        }
    return inv;
}

}  // namespace multibord
