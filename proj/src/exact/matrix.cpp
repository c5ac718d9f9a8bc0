#include "multibord/exact/matrix.hpp"

namespace multibord {

ExactMatrix::ExactMatrix(CoeffSystem sys, std::size_t rows, std::size_t cols)
    : sys_(sys), rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

ExactMatrix ExactMatrix::identity(CoeffSystem sys, std::size_t n) {
    ExactMatrix m(sys, n, n);
    for (std::size_t i = 0; i < n; ++i) m.mut(i, i) = 1;
    return m;
}

ExactMatrix ExactMatrix::from_rows(CoeffSystem sys, const std::vector<RatVec>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows[0].size() : 0;
    ExactMatrix m(sys, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw DimensionError("ragged rows in matrix literal");
        for (std::size_t j = 0; j < c; ++j) m.mut(i, j) = sys.reduce(rows[i][j]);
    }
    return m;
}

const Rat& ExactMatrix::at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw DimensionError("matrix index out of range");
    return a_[i * cols_ + j];
}

void ExactMatrix::set(std::size_t i, std::size_t j, const Rat& v) {
    if (i >= rows_ || j >= cols_) throw DimensionError("matrix index out of range");
    a_[i * cols_ + j] = sys_.reduce(v);
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || sys_ != o.sys_)
        throw DimensionError("matrix addition shape/system mismatch");
    ExactMatrix m(sys_, rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = sys_.reduce(a_[k] + o.a_[k]);
    return m;
}

ExactMatrix ExactMatrix::operator-(const ExactMatrix& o) const {
    return *this + o.scaled(Rat(-1));
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
    if (cols_ != o.rows_ || sys_ != o.sys_) throw DimensionError("matrix product shape/system mismatch");
    ExactMatrix m(sys_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rat& aik = a_[i * cols_ + k];
            if (aik == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) m.mut(i, j) += aik * o.a_[k * o.cols_ + j];
        }
    for (auto& v : m.a_) v = sys_.reduce(v);
    return m;
}

ExactMatrix ExactMatrix::scaled(const Rat& c) const {
    ExactMatrix m(sys_, rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = sys_.reduce(a_[k] * c);
    return m;
}

ExactMatrix ExactMatrix::transposed() const {
    ExactMatrix m(sys_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.mut(j, i) = a_[i * cols_ + j];
    return m;
}

RatVec ExactMatrix::apply(const RatVec& x) const {
    if (x.size() != cols_) throw DimensionError("matrix apply: vector length mismatch");
    RatVec y(rows_, Rat(0));
    for (std::size_t i = 0; i < rows_; ++i) {
        Rat acc = 0;
        for (std::size_t j = 0; j < cols_; ++j)
            if (a_[i * cols_ + j] != 0) acc += a_[i * cols_ + j] * x[j];
        y[i] = sys_.reduce(acc);
    }
    return y;
}

bool ExactMatrix::operator==(const ExactMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && sys_ == o.sys_ && a_ == o.a_;
}

bool ExactMatrix::is_zero() const {
    for (const auto& v : a_)
        if (v != 0) return false;
    return true;
}

bool ExactMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (a_[i * cols_ + j] != Rat(i == j ? 1 : 0)) return false;
    return true;
}

RatVec vec_add(const RatVec& a, const RatVec& b, const CoeffSystem& sys) {
    if (a.size() != b.size()) throw DimensionError("vector addition length mismatch");
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = sys.reduce(a[i] + b[i]);
    return r;
}

RatVec vec_scale(const Rat& c, const RatVec& a, const CoeffSystem& sys) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = sys.reduce(c * a[i]);
    return r;
}

bool vec_is_zero(const RatVec& a) {
    for (const auto& v : a)
        if (v != 0) return false;
    return true;
}

}  // namespace multibord
