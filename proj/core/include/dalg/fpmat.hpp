#ifndef DALG_FPMAT_HPP
#define DALG_FPMAT_HPP

#include <cstddef>
#include <vector>

#include "dalg/modarith.hpp"

namespace dalg {

// Dense matrix over F_p, p an odd prime below 2^62 (p = 2 also works, the
// Montgomery fast path just switches off).  Row major.
class FpMat {
public:
    FpMat(u64 p, std::size_t rows, std::size_t cols)
        : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    u64 p() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    u64& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    u64 operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    u64* row(std::size_t i) { return a_.data() + i * cols_; }
    const u64* row(std::size_t i) const { return a_.data() + i * cols_; }

    // In-place reduced row echelon form.  Returns the pivot column of each
    // pivot row in order; rank is the size of that list.
    std::vector<std::size_t> rref();

    // Canonical nullspace basis from the RREF: one vector per free column,
    // with a 1 in that free column.  Calls rref() internally.
    std::vector<std::vector<u64>> nullspace();

private:
    u64 p_;
    std::size_t rows_, cols_;
    std::vector<u64> a_;
};

} // namespace dalg

#endif
