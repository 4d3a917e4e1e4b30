#pragma once

#include <vector>

#include "torext/polynomial.hpp"

namespace torext {

// Graded free module, recorded by the internal degree of each basis element.
// S(-j) corresponds to a generator of degree j.
struct FreeModule {
    std::vector<int> degs;

    int rank() const { return (int)degs.size(); }
    int max_deg() const {
        int d = 0;
        for (int x : degs) d = d > x ? d : x;
        return d;
    }
    int min_deg() const {
        if (degs.empty()) return 0;
        int d = degs[0];
        for (int x : degs) d = d < x ? d : x;
        return d;
    }
    friend bool operator==(const FreeModule& a, const FreeModule& b) { return a.degs == b.degs; }
};

// Map between graded free modules, stored column-major and sparse. A nonzero
// entry (i,j) must be homogeneous of degree degs_src[j] - degs_tgt[i] + shift.
class GradedMap {
  public:
    GradedMap() : ring_(nullptr), shift_(0) {}
    GradedMap(const Ring* R, FreeModule src, FreeModule tgt, int shift = 0)
        : ring_(R), src_(std::move(src)), tgt_(std::move(tgt)), shift_(shift),
          cols_(src_.rank()) {}

    static GradedMap identity(const Ring* R, const FreeModule& F);
    static GradedMap zero(const Ring* R, const FreeModule& src, const FreeModule& tgt,
                          int shift = 0) {
        return GradedMap(R, src, tgt, shift);
    }

    const Ring* ring() const { return ring_; }
    const FreeModule& source() const { return src_; }
    const FreeModule& target() const { return tgt_; }
    int rows() const { return tgt_.rank(); }
    int cols() const { return (int)cols_.size(); }
    int shift() const { return shift_; }

    // sparse column: (row, poly) pairs with ascending row
    const std::vector<std::pair<int, Polynomial>>& col(int j) const { return cols_[j]; }

    void set(int i, int j, Polynomial f);
    Polynomial entry(int i, int j) const;
    bool col_is_zero(int j) const { return cols_[j].empty(); }
    bool is_zero() const {
        for (auto& c : cols_)
            if (!c.empty()) return false;
        return true;
    }

    // throws HomogeneityError unless every entry is homogeneous of the forced degree
    void validate() const;

    GradedMap operator+(const GradedMap& o) const;
    GradedMap operator-() const;
    GradedMap scaled(uint32_t c) const;

    friend bool operator==(const GradedMap& a, const GradedMap& b);

  private:
    const Ring* ring_;
    FreeModule src_, tgt_;
    int shift_;
    std::vector<std::vector<std::pair<int, Polynomial>>> cols_;
};

// matrix product f∘g; degree shifts add
GradedMap compose(const GradedMap& f, const GradedMap& g);

// true iff no entry has a nonzero constant term
bool is_minimal(const GradedMap& f);

}  // namespace torext
