#include "torext/graded.hpp"

#include <algorithm>

namespace torext {

GradedMap GradedMap::identity(const Ring* R, const FreeModule& F) {
    GradedMap m(R, F, F, 0);
    for (int j = 0; j < F.rank(); ++j) m.set(j, j, Polynomial::constant(R, 1));
    return m;
}

void GradedMap::set(int i, int j, Polynomial f) {
    auto& c = cols_[j];
    auto it = std::lower_bound(c.begin(), c.end(), i,
                               [](const auto& pr, int row) { return pr.first < row; });
    if (it != c.end() && it->first == i) {
        if (f.is_zero())
            c.erase(it);
        else
            it->second = std::move(f);
    } else if (!f.is_zero()) {
        c.insert(it, {i, std::move(f)});
    }
}

Polynomial GradedMap::entry(int i, int j) const {
    const auto& c = cols_[j];
    auto it = std::lower_bound(c.begin(), c.end(), i,
                               [](const auto& pr, int row) { return pr.first < row; });
    if (it != c.end() && it->first == i) return it->second;
    return Polynomial::zero(ring_);
}

void GradedMap::validate() const {
    for (int j = 0; j < cols(); ++j)
        for (auto& [i, f] : cols_[j]) {
            if (f.is_zero()) continue;
            if (!f.is_homogeneous())
                fail(ErrorKind::HomogeneityError, "matrix entry is not homogeneous");
            int want = src_.degs[j] - tgt_.degs[i] + shift_;
            if (f.degree() != want)
                fail(ErrorKind::HomogeneityError, "matrix entry has wrong degree");
        }
}

GradedMap GradedMap::operator+(const GradedMap& o) const {
    if (!(src_ == o.src_) || !(tgt_ == o.tgt_) || shift_ != o.shift_)
        fail(ErrorKind::ShapeError, "sum of maps with different shapes");
    GradedMap r(ring_, src_, tgt_, shift_);
    for (int j = 0; j < cols(); ++j) {
        size_t a = 0, b = 0;
        auto& ca = cols_[j];
        auto& cb = o.cols_[j];
        while (a < ca.size() || b < cb.size()) {
            if (b == cb.size() || (a < ca.size() && ca[a].first < cb[b].first)) {
                r.cols_[j].push_back(ca[a++]);
            } else if (a == ca.size() || cb[b].first < ca[a].first) {
                r.cols_[j].push_back(cb[b++]);
            } else {
                Polynomial s = ca[a].second + cb[b].second;
                if (!s.is_zero()) r.cols_[j].push_back({ca[a].first, std::move(s)});
                ++a, ++b;
            }
        }
    }
    return r;
}

GradedMap GradedMap::operator-() const {
    GradedMap r = *this;
    for (auto& c : r.cols_)
        for (auto& [i, f] : c) f = -f;
    return r;
}

GradedMap GradedMap::scaled(uint32_t s) const {
    GradedMap r(ring_, src_, tgt_, shift_);
    for (int j = 0; j < cols(); ++j)
        for (auto& [i, f] : cols_[j]) {
            Polynomial g = f.scaled(s);
            if (!g.is_zero()) r.cols_[j].push_back({i, std::move(g)});
        }
    return r;
}

bool operator==(const GradedMap& a, const GradedMap& b) {
    if (!(a.src_ == b.src_) || !(a.tgt_ == b.tgt_)) return false;
    return a.cols_ == b.cols_;
}

GradedMap compose(const GradedMap& f, const GradedMap& g) {
    if (!(g.target() == f.source()))
        fail(ErrorKind::ShapeError, "compose: target of g must equal source of f");
    GradedMap r(f.ring(), g.source(), f.target(), f.shift() + g.shift());
    for (int j = 0; j < g.cols(); ++j) {
        // column j of result = f applied to column j of g
        std::vector<Polynomial> acc(f.rows(), Polynomial::zero(f.ring()));
        std::vector<bool> used(f.rows(), false);
        for (auto& [k, gk] : g.col(j)) {
            for (auto& [i, fik] : f.col(k)) {
                acc[i] = used[i] ? acc[i] + fik * gk : fik * gk;
                used[i] = true;
            }
        }
        for (int i = 0; i < f.rows(); ++i)
            if (used[i] && !acc[i].is_zero()) r.set(i, j, std::move(acc[i]));
    }
    return r;
}

bool is_minimal(const GradedMap& f) {
    for (int j = 0; j < f.cols(); ++j)
        for (auto& [i, p] : f.col(j))
            if (p.constant_term() != 0) return false;
    return true;
}

}  // namespace torext
