#include "torext/linalg.hpp"

#include "torext/parallel.hpp"

namespace torext::linalg {

namespace {

inline uint32_t fp_mul(uint32_t a, uint32_t b, uint32_t p) {
    return (uint32_t)((uint64_t)a * b % p);
}

inline uint32_t fp_inv(uint32_t a, uint32_t p) {
    PrimeField f{p};
    return f.inv(a);
}

// Elimination over a lazily reduced u64 working copy: entries only pass
// through % when a pivot needs them. Accumulated values stay far below 2^63
// at the sizes this engine sees.
template <bool Parallel>
std::vector<int> rref_impl(Mat& m) {
    const uint32_t p = m.p;
    const int rows = m.rows, cols = m.cols;
    std::vector<uint64_t> w(m.a.begin(), m.a.end());
    auto wat = [&](int i, int j) -> uint64_t& { return w[(size_t)i * cols + j]; };
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i) {
            wat(i, c) %= p;
            if (wat(i, c)) {
                pr = i;
                break;
            }
        }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < cols; ++j) std::swap(wat(pr, j), wat(r, j));
        // normalize the pivot row fully
        uint32_t inv = fp_inv((uint32_t)wat(r, c), p);
        for (int j = c; j < cols; ++j) wat(r, j) = wat(r, j) % p * inv % p;
        const uint64_t* prow = &w[(size_t)r * cols];
        auto eliminate = [&](int i) {
            if (i == r) return;
            uint64_t& lead = wat(i, c);
            lead %= p;
            if (!lead) return;
            uint64_t f = p - lead;
            uint64_t* row = &w[(size_t)i * cols];
            for (int j = c; j < cols; ++j) row[j] += f * prow[j];
            lead = 0;
        };
        if constexpr (Parallel) {
            parallel_for(rows, eliminate);
        } else {
            for (int i = 0; i < rows; ++i) eliminate(i);
        }
        // keep magnitudes bounded: reduce the whole matrix when values grow
        if ((pivots.size() & 1023) == 1023)
            for (auto& x : w) x %= p;
        pivots.push_back(c);
        ++r;
    }
    for (size_t k = 0; k < m.a.size(); ++k) m.a[k] = (uint32_t)(w[k] % p);
    return pivots;
}

}  // namespace

std::vector<int> rref_serial(Mat& m) { return rref_impl<false>(m); }

std::vector<int> rref(Mat& m) {
    // two-way parallelism only pays off for large eliminations
    if ((size_t)m.rows * m.cols < 262144 || thread_budget() <= 1) return rref_impl<false>(m);
    return rref_impl<true>(m);
}

int rank_of_serial(const Mat& m) {
    Mat c = m;
    return (int)rref_serial(c).size();
}

int rank_of(const Mat& m) {
    Mat c = m;
    return (int)rref(c).size();
}

namespace {

// one output row with lazily reduced accumulators
inline void mul_row(const Mat& x, const Mat& y, int i, std::vector<uint64_t>& acc,
                    uint32_t* out) {
    std::fill(acc.begin(), acc.end(), 0);
    for (int k = 0; k < x.cols; ++k) {
        uint64_t f = x.at(i, k);
        if (!f) continue;
        const uint32_t* yrow = &y.a[(size_t)k * y.cols];
        for (int j = 0; j < y.cols; ++j) acc[j] += f * yrow[j];
    }
    for (int j = 0; j < y.cols; ++j) out[j] = (uint32_t)(acc[j] % x.p);
}

}  // namespace

Mat mul_serial(const Mat& x, const Mat& y) {
    Mat r(x.rows, y.cols, x.p);
    std::vector<uint64_t> acc(y.cols);
    for (int i = 0; i < x.rows; ++i) mul_row(x, y, i, acc, &r.a[(size_t)i * y.cols]);
    return r;
}

Mat mul(const Mat& x, const Mat& y) {
    if ((size_t)x.rows * y.cols * x.cols < 262144 || thread_budget() <= 1)
        return mul_serial(x, y);
    Mat r(x.rows, y.cols, x.p);
    parallel_for(x.rows, [&](int i) {
        std::vector<uint64_t> acc(y.cols);
        mul_row(x, y, i, acc, &r.a[(size_t)i * y.cols]);
    });
    return r;
}

Nullspace nullspace_with_supports(const Mat& m) {
    Mat e = m;
    std::vector<int> piv = rref(e);
    std::vector<bool> is_piv(m.cols, false);
    for (int c : piv) is_piv[c] = true;
    Nullspace out;
    for (int c = 0; c < m.cols; ++c)
        if (!is_piv[c]) out.free_cols.push_back(c);
    out.basis = Mat(m.cols, (int)out.free_cols.size(), m.p);
    for (size_t k = 0; k < out.free_cols.size(); ++k) {
        int fc = out.free_cols[k];
        out.basis.at(fc, (int)k) = 1;
        for (size_t r = 0; r < piv.size(); ++r) {
            uint32_t v = e.at((int)r, fc);
            if (v) out.basis.at(piv[r], (int)k) = m.p - v;
        }
    }
    return out;
}

Mat nullspace(const Mat& m) { return nullspace_with_supports(m).basis; }

std::optional<std::vector<uint32_t>> solve(const Mat& m, const std::vector<uint32_t>& b) {
    Mat aug(m.rows, m.cols + 1, m.p);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols) = b[i] % m.p;
    }
    std::vector<int> piv = rref(aug);
    std::vector<uint32_t> x(m.cols, 0);
    for (size_t r = 0; r < piv.size(); ++r) {
        if (piv[r] == m.cols) return std::nullopt;  // inconsistent
        x[piv[r]] = aug.at((int)r, m.cols);
    }
    return x;
}

bool EchelonSpace::reduce(std::vector<uint32_t>& v) const {
    PrimeField f{ech.p};
    for (int r = 0; r < ech.rows; ++r) {
        uint32_t c = v[piv[r]];
        if (!c) continue;
        for (int j = 0; j < ech.cols; ++j)
            v[j] = f.sub(v[j], f.mul(c, ech.at(r, j)));
    }
    for (auto x : v)
        if (x) return false;
    return true;
}

bool EchelonSpace::insert(std::vector<uint32_t> v) {
    PrimeField f{ech.p};
    for (int r = 0; r < ech.rows; ++r) {
        uint32_t c = v[piv[r]];
        if (!c) continue;
        for (int j = 0; j < ech.cols; ++j)
            v[j] = f.sub(v[j], f.mul(c, ech.at(r, j)));
    }
    int lead = -1;
    for (int j = 0; j < ech.cols; ++j)
        if (v[j]) {
            lead = j;
            break;
        }
    if (lead < 0) return false;
    uint32_t inv = f.inv(v[lead]);
    for (auto& x : v) x = f.mul(x, inv);
    // back-substitute into existing rows to keep full rref
    for (int r = 0; r < ech.rows; ++r) {
        uint32_t c = ech.at(r, lead);
        if (!c) continue;
        for (int j = 0; j < ech.cols; ++j)
            ech.at(r, j) = f.sub(ech.at(r, j), f.mul(c, v[j]));
    }
    // insert keeping pivots sorted
    int pos = 0;
    while (pos < (int)piv.size() && piv[pos] < lead) ++pos;
    Mat next(ech.rows + 1, ech.cols, ech.p);
    for (int r = 0; r < ech.rows + 1; ++r) {
        const uint32_t* srcrow = nullptr;
        if (r < pos)
            srcrow = &ech.a[(size_t)r * ech.cols];
        else if (r == pos)
            srcrow = v.data();
        else
            srcrow = &ech.a[(size_t)(r - 1) * ech.cols];
        for (int j = 0; j < ech.cols; ++j) next.at(r, j) = srcrow[j];
    }
    ech = std::move(next);
    piv.insert(piv.begin() + pos, lead);
    return true;
}

std::optional<Mat> inverse(const Mat& m) {
    if (m.rows != m.cols) return std::nullopt;
    Mat aug(m.rows, 2 * m.cols, m.p);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols + i) = 1;
    }
    auto piv = rref(aug);
    if ((int)piv.size() != m.rows) return std::nullopt;
    for (int r = 0; r < m.rows; ++r)
        if (piv[r] != r) return std::nullopt;
    Mat inv(m.rows, m.cols, m.p);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) inv.at(i, j) = aug.at(i, m.cols + j);
    return inv;
}

}  // namespace torext::linalg
