#include "dalg/fpmat.hpp"

#include "dalg/error.hpp"

namespace dalg {

namespace {

// Montgomery arithmetic for odd moduli; plain modular ops otherwise.
// The elimination kernels spend nearly all their time in mul(), so the
// branch on `mont` is predicted perfectly.
struct MulCtx {
    u64 p;
    bool mont;
    u64 pinv = 0;   // -p^{-1} mod 2^64
    u64 r2 = 0;     // 2^128 mod p

    explicit MulCtx(u64 p_) : p(p_), mont((p_ & 1) != 0) {
        if (!mont) return;
        u64 inv = p;
        for (int i = 0; i < 5; ++i) inv *= 2 - p * inv;   // Newton, inv = p^{-1} mod 2^64
        pinv = ~inv + 1;
        u128 r = (u128(1) << 64) % p;
        r2 = static_cast<u64>(r * r % p);
    }

    u64 mmul(u64 a, u64 b) const {
        u128 t = (u128)a * b;
        u64 m = static_cast<u64>(t) * pinv;
        u128 s = t + (u128)m * p;
        u64 r = static_cast<u64>(s >> 64);
        return r >= p ? r - p : r;
    }

    u64 mul(u64 a, u64 b) const { return mont ? mmul(a, b) : mulmod(a, b, p); }
    u64 to(u64 x) const { return mont ? mmul(x % p, r2) : x % p; }
    u64 from(u64 x) const { return mont ? mmul(x, 1) : x; }
};

} // namespace

std::vector<std::size_t> FpMat::rref() {
    MulCtx cx(p_);
    for (auto& x : a_) x = cx.to(x);

    std::vector<std::size_t> pivots;
    std::size_t prow = 0;
    for (std::size_t col = 0; col < cols_ && prow < rows_; ++col) {
        std::size_t sel = rows_;
        for (std::size_t i = prow; i < rows_; ++i) {
            if ((*this)(i, col) != 0) { sel = i; break; }
        }
        if (sel == rows_) continue;
        if (sel != prow) {
            u64* a = row(sel);
            u64* b = row(prow);
            for (std::size_t j = col; j < cols_; ++j) std::swap(a[j], b[j]);
        }
        // normalize pivot row to 1
        u64 piv = cx.from((*this)(prow, col));
        u64 inv = cx.to(invmod(piv, p_));
        u64* pr = row(prow);
        for (std::size_t j = col; j < cols_; ++j) pr[j] = cx.mul(pr[j], inv);
        // eliminate below
        for (std::size_t i = prow + 1; i < rows_; ++i) {
            u64 f = (*this)(i, col);
            if (f == 0) continue;
            u64* ri = row(i);
            ri[col] = 0;
            for (std::size_t j = col + 1; j < cols_; ++j) {
                u64 t = cx.mul(f, pr[j]);
                ri[j] = submod(ri[j], t, p_);
            }
        }
        pivots.push_back(col);
        ++prow;
    }
    // back substitution
    for (std::size_t k = pivots.size(); k-- > 0;) {
        std::size_t col = pivots[k];
        const u64* pr = row(k);
        for (std::size_t i = 0; i < k; ++i) {
            u64 f = (*this)(i, col);
            if (f == 0) continue;
            u64* ri = row(i);
            ri[col] = 0;
            for (std::size_t j = col + 1; j < cols_; ++j) {
                u64 t = cx.mul(f, pr[j]);
                ri[j] = submod(ri[j], t, p_);
            }
        }
    }
    for (auto& x : a_) x = cx.from(x);
    return pivots;
}

std::vector<std::vector<u64>> FpMat::nullspace() {
    std::vector<std::size_t> pivots = rref();
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    std::vector<std::vector<u64>> basis;
    for (std::size_t free_col = 0; free_col < cols_; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<u64> v(cols_, 0);
        v[free_col] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k) {
            u64 x = (*this)(k, free_col);
            if (x != 0) v[pivots[k]] = p_ - x;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace dalg
