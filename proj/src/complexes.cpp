#include "torext/complexes.hpp"

#include <algorithm>

#include "torext/parallel.hpp"

namespace torext {

bool operator==(const GradedDims& a, const GradedDims& b) {
    int lo = std::min(a.lo, b.lo);
    int hi = std::max(a.lo + (int)a.dims.size(), b.lo + (int)b.dims.size());
    for (int d = lo; d < hi; ++d)
        if (a.at(d) != b.at(d)) return false;
    return true;
}

ChainComplex::ChainComplex(const Ring* R, int lo, std::vector<FreeModule> terms,
                           std::vector<GradedMap> difs, std::vector<Polynomial> quotient,
                           bool check)
    : ring_(R), lo_(lo), terms_(std::move(terms)), difs_(std::move(difs)),
      quotient_(std::move(quotient)) {
    if (difs_.size() != terms_.size())
        fail(ErrorKind::ShapeError, "chain complex: need one differential slot per term");
    for (size_t k = 1; k < terms_.size(); ++k) {
        if (!(difs_[k].source() == terms_[k]) || !(difs_[k].target() == terms_[k - 1]))
            fail(ErrorKind::ShapeError, "chain complex: differential shape mismatch");
        difs_[k].validate();
    }
    if (check) check_d2();
}

void ChainComplex::check_d2() const {
    std::optional<GroebnerBasis> igb;
    if (!quotient_.empty()) igb = ideal_gb(ring_, quotient_);
    for (size_t k = 2; k < terms_.size(); ++k) {
        GradedMap c = compose(difs_[k - 1], difs_[k]);
        if (igb) c = reduce_entries(c, *igb);
        if (!c.is_zero()) fail(ErrorKind::ChainMapError, "d^2 != 0");
    }
}

const FreeModule& ChainComplex::term(int i) const {
    static FreeModule empty;
    if (!has_term(i)) return empty;
    return terms_[i - lo_];
}

GradedMap ChainComplex::dif(int i) const {
    if (i > lo_ && i <= hi()) return difs_[i - lo_];
    return GradedMap::zero(ring_, term(i), term(i - 1));
}

ChainComplex ChainComplex::shifted(int s) const {
    std::vector<GradedMap> d = difs_;
    if (s & 1)
        for (auto& m : d) m = -m;
    ChainComplex r;
    r.ring_ = ring_;
    r.lo_ = lo_ + s;
    r.terms_ = terms_;
    r.difs_ = std::move(d);
    r.quotient_ = quotient_;
    return r;
}

Polynomial poly_normal_form(const Polynomial& f, const GroebnerBasis& ideal_gb) {
    std::vector<MTerm> terms;
    for (auto& tm : f.terms()) terms.push_back({0, tm.m, tm.c});
    ModVec v = mv_sorted(std::move(terms), ideal_gb.order, ideal_gb.ring->fp);
    ModVec nf = normal_form(v, ideal_gb);
    std::vector<PTerm> out;
    for (auto& t : nf.t) out.push_back({t.m, t.c});
    return Polynomial(f.ring() ? f.ring() : ideal_gb.ring, std::move(out));
}

GradedMap reduce_entries(const GradedMap& m, const GroebnerBasis& gb) {
    GradedMap r(m.ring(), m.source(), m.target(), m.shift());
    for (int j = 0; j < m.cols(); ++j)
        for (auto& [i, f] : m.col(j)) {
            Polynomial g = poly_normal_form(f, gb);
            if (!g.is_zero()) r.set(i, j, std::move(g));
        }
    return r;
}

GroebnerBasis ideal_gb(const Ring* R, const std::vector<Polynomial>& gens, int degree_cap) {
    FreeModule rank1;
    rank1.degs = {0};
    std::vector<ModVec> vs;
    for (auto& g : gens) {
        std::vector<MTerm> terms;
        for (auto& tm : g.terms()) terms.push_back({0, tm.m, tm.c});
        vs.push_back(mv_sorted(std::move(terms), ModuleOrder::top(), R->fp));
    }
    return buchberger(R, rank1, vs, ModuleOrder::top(), {}, degree_cap);
}

std::vector<uint32_t> wedge_masks(int c, int q) {
    std::vector<uint32_t> out;
    for (uint32_t m = 0; m < (1u << c); ++m)
        if (__builtin_popcount(m) == q) out.push_back(m);
    return out;
}

int wedge_sign(int i, uint32_t mask) {
    if (mask & (1u << i)) return 0;
    int below = __builtin_popcount(mask & ((1u << i) - 1));
    return (below & 1) ? -1 : 1;
}

int wedge_sign_masks(uint32_t a, uint32_t b) {
    if (a & b) return 0;
    // sign to sort e_a ^ e_b: for each element of b, count larger elements of a
    int inv = 0;
    for (int i = 0; i < 32; ++i)
        if (b & (1u << i)) inv += __builtin_popcount(a & ~((1u << (i + 1)) - 1));
    return (inv & 1) ? -1 : 1;
}

ChainComplex koszul(const Ring* R, const std::vector<Polynomial>& f) {
    int c = (int)f.size();
    if (c == 0) fail(ErrorKind::ShapeError, "koszul: need at least one element");
    for (auto& g : f)
        if (!g.is_homogeneous() || g.is_zero())
            fail(ErrorKind::HomogeneityError, "koszul: entries must be homogeneous and nonzero");
    std::vector<FreeModule> terms(c + 1);
    std::vector<GradedMap> difs;
    std::vector<std::vector<uint32_t>> masks(c + 1);
    for (int q = 0; q <= c; ++q) {
        masks[q] = wedge_masks(c, q);
        for (uint32_t m : masks[q]) {
            int d = 0;
            for (int i = 0; i < c; ++i)
                if (m & (1u << i)) d += f[i].degree();
            terms[q].degs.push_back(d);
        }
    }
    difs.push_back(GradedMap());  // slot 0 unused
    for (int q = 1; q <= c; ++q) {
        GradedMap d(R, terms[q], terms[q - 1], 0);
        for (size_t col = 0; col < masks[q].size(); ++col) {
            uint32_t T = masks[q][col];
            int pos = 0;
            for (int i = 0; i < c; ++i) {
                if (!(T & (1u << i))) continue;
                ++pos;  // 1-based position of i in sorted T
                uint32_t rest = T & ~(1u << i);
                size_t row = std::lower_bound(masks[q - 1].begin(), masks[q - 1].end(), rest) -
                             masks[q - 1].begin();
                Polynomial entry = (pos % 2 == 1) ? f[i] : -f[i];
                d.set((int)row, (int)col, d.entry((int)row, (int)col) + entry);
            }
        }
        difs.push_back(std::move(d));
    }
    return ChainComplex(R, 0, std::move(terms), std::move(difs));
}

std::vector<GradedMap> koszul_homotopy(const ChainComplex& K, const std::vector<Polynomial>& f,
                                       int i) {
    int c = (int)f.size();
    const Ring* R = K.ring();
    std::vector<GradedMap> sig;
    for (int q = 0; q < c; ++q) {
        auto src_masks = wedge_masks(c, q);
        auto tgt_masks = wedge_masks(c, q + 1);
        GradedMap s(R, K.term(q), K.term(q + 1), f[i].degree());
        for (size_t col = 0; col < src_masks.size(); ++col) {
            uint32_t T = src_masks[col];
            int sgn = wedge_sign(i, T);
            if (!sgn) continue;
            uint32_t to = T | (1u << i);
            size_t row =
                std::lower_bound(tgt_masks.begin(), tgt_masks.end(), to) - tgt_masks.begin();
            s.set((int)row, (int)col, Polynomial::constant(R, sgn));
        }
        sig.push_back(std::move(s));
    }
    return sig;
}

ChainComplex tensor(const ChainComplex& C, const ChainComplex& D) {
    const Ring* R = C.ring();
    if (!R->same_as(*D.ring())) fail(ErrorKind::RingMismatch, "tensor: different rings");
    int lo = C.lo() + D.lo();
    int hi = C.hi() + D.hi();
    // summand layout in (C (x) D)_n: blocks by ascending i with i+j=n,
    // inside a block C_i basis is the major index
    auto block_offsets = [&](int n) {
        std::vector<std::tuple<int, int, int>> offs;  // (i, j, offset)
        int off = 0;
        for (int i = std::max(C.lo(), n - D.hi()); i <= std::min(C.hi(), n - D.lo()); ++i) {
            int j = n - i;
            offs.emplace_back(i, j, off);
            off += C.term(i).rank() * D.term(j).rank();
        }
        return offs;
    };
    std::vector<FreeModule> terms;
    for (int n = lo; n <= hi; ++n) {
        FreeModule F;
        for (auto& [i, j, off] : block_offsets(n)) {
            for (int a = 0; a < C.term(i).rank(); ++a)
                for (int b = 0; b < D.term(j).rank(); ++b)
                    F.degs.push_back(C.term(i).degs[a] + D.term(j).degs[b]);
        }
        terms.push_back(std::move(F));
    }
    std::vector<GradedMap> difs;
    difs.push_back(GradedMap());
    for (int n = lo + 1; n <= hi; ++n) {
        GradedMap d(R, terms[n - lo], terms[n - 1 - lo], 0);
        auto src_offs = block_offsets(n);
        auto tgt_offs = block_offsets(n - 1);
        auto tgt_offset = [&](int i, int j) -> int {
            for (auto& [a, b, off] : tgt_offs)
                if (a == i && b == j) return off;
            return -1;
        };
        for (auto& [i, j, soff] : src_offs) {
            int rc = C.term(i).rank(), rd = D.term(j).rank();
            // dC (x) 1
            if (C.has_term(i - 1) && tgt_offset(i - 1, j) >= 0) {
                const GradedMap& dc = C.dif(i);
                int toff = tgt_offset(i - 1, j);
                for (int a = 0; a < rc; ++a)
                    for (auto& [r, p] : dc.col(a))
                        for (int b = 0; b < rd; ++b)
                            d.set(toff + r * rd + b, soff + a * rd + b, p);
            }
            // (-1)^i 1 (x) dD
            if (D.has_term(j - 1) && tgt_offset(i, j - 1) >= 0) {
                const GradedMap& dd = D.dif(j);
                int toff = tgt_offset(i, j - 1);
                int rd1 = D.term(j - 1).rank();
                (void)rd1;
                for (int b = 0; b < rd; ++b)
                    for (auto& [r, p] : dd.col(b)) {
                        Polynomial q = (i & 1) ? -p : p;
                        for (int a = 0; a < rc; ++a)
                            d.set(toff + a * D.term(j - 1).rank() + r, soff + a * rd + b,
                                  d.entry(toff + a * D.term(j - 1).rank() + r, soff + a * rd + b) +
                                      q);
                    }
            }
        }
        difs.push_back(std::move(d));
    }
    return ChainComplex(R, lo, std::move(terms), std::move(difs), C.quotient());
}

ChainComplex cone(const ChainComplex& C, const ChainComplex& D,
                  const std::vector<GradedMap>& phi) {
    const Ring* R = C.ring();
    std::optional<GroebnerBasis> igb;
    if (!C.quotient().empty()) igb = ideal_gb(R, C.quotient());
    // phi[k] : C_{C.lo()+k} -> D_{C.lo()+k}; must be a chain map
    auto phi_at = [&](int i) -> GradedMap {
        int k = i - C.lo();
        if (k >= 0 && k < (int)phi.size()) return phi[k];
        return GradedMap::zero(R, C.term(i), D.term(i));
    };
    for (int i = C.lo() + 1; i <= C.hi(); ++i) {
        GradedMap lhs = compose(D.dif(i), phi_at(i));
        GradedMap rhs = compose(phi_at(i - 1), C.dif(i));
        GradedMap diff = lhs + (-rhs);
        if (igb) diff = reduce_entries(diff, *igb);
        if (!diff.is_zero()) fail(ErrorKind::ChainMapError, "cone: phi is not a chain map");
    }
    int lo = std::min(D.lo(), C.lo() + 1);
    int hi = std::max(D.hi(), C.hi() + 1);
    std::vector<FreeModule> terms;
    for (int n = lo; n <= hi; ++n) {
        FreeModule F = D.term(n);
        for (int dg : C.term(n - 1).degs) F.degs.push_back(dg);
        terms.push_back(std::move(F));
    }
    std::vector<GradedMap> difs;
    difs.push_back(GradedMap());
    for (int n = lo + 1; n <= hi; ++n) {
        GradedMap d(R, terms[n - lo], terms[n - 1 - lo], 0);
        int dn = D.term(n).rank();
        int dn1 = D.term(n - 1).rank();
        const GradedMap& dd = D.dif(n);
        for (int j = 0; j < dn; ++j)
            for (auto& [i, p] : dd.col(j)) d.set(i, j, p);
        GradedMap ph = phi_at(n - 1);
        for (int j = 0; j < C.term(n - 1).rank(); ++j)
            for (auto& [i, p] : ph.col(j)) d.set(i, dn + j, p);
        const GradedMap& dc = C.dif(n - 1);
        for (int j = 0; j < C.term(n - 1).rank(); ++j)
            for (auto& [i, p] : dc.col(j)) d.set(dn1 + i, dn + j, -p);
        difs.push_back(std::move(d));
    }
    return ChainComplex(R, lo, std::move(terms), std::move(difs), C.quotient());
}

KComplex reduce_mod_m(const ChainComplex& C) {
    KComplex K;
    K.p = C.ring()->fp.p;
    K.lo = C.lo();
    for (int n = C.lo(); n <= C.hi(); ++n) K.terms.push_back(C.term(n));
    K.dif.push_back(linalg::Mat());
    for (int n = C.lo() + 1; n <= C.hi(); ++n) {
        const GradedMap& d = C.dif(n);
        linalg::Mat m(d.rows(), d.cols(), K.p);
        for (int j = 0; j < d.cols(); ++j)
            for (auto& [i, p] : d.col(j)) m.at(i, j) = p.constant_term();
        K.dif.push_back(std::move(m));
    }
    return K;
}

namespace {

// indices of generators of F with degree d
std::vector<int> gens_of_degree(const FreeModule& F, int d) {
    std::vector<int> out;
    for (int i = 0; i < F.rank(); ++i)
        if (F.degs[i] == d) out.push_back(i);
    return out;
}

linalg::Mat submatrix(const linalg::Mat& m, const std::vector<int>& rows,
                      const std::vector<int>& cols) {
    linalg::Mat s((int)rows.size(), (int)cols.size(), m.p);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j) s.at((int)i, (int)j) = m.at(rows[i], cols[j]);
    return s;
}

}  // namespace

HomologyAtDegree homology(const KComplex& C, int n) {
    HomologyAtDegree H;
    if (!C.has_term(n)) return H;
    const FreeModule& F = C.term(n);
    if (F.rank() == 0) return H;
    int dlo = F.min_deg(), dhi = F.max_deg();
    H.dims.lo = dlo;
    for (int d = dlo; d <= dhi; ++d) {
        auto idx = gens_of_degree(F, d);
        linalg::Mat cycles;  // columns: cycle basis in the coordinates of idx
        if (C.has_term(n - 1) && C.term(n - 1).rank() > 0 && n - 1 >= C.lo && n > C.lo) {
            auto tgt = gens_of_degree(C.term(n - 1), d);
            linalg::Mat dn = submatrix(C.dif[n - C.lo], tgt, idx);
            cycles = linalg::nullspace(dn);
        } else {
            cycles = linalg::Mat::identity((int)idx.size(), C.p);
        }
        // boundaries from position n+1
        linalg::EchelonSpace bnd((int)idx.size(), C.p);
        if (C.has_term(n + 1)) {
            auto src = gens_of_degree(C.term(n + 1), d);
            linalg::Mat dn1 = submatrix(C.dif[n + 1 - C.lo], idx, src);
            for (int j = 0; j < dn1.cols; ++j) {
                std::vector<uint32_t> col(dn1.rows);
                for (int i = 0; i < dn1.rows; ++i) col[i] = dn1.at(i, j);
                bnd.insert(std::move(col));
            }
        }
        // representatives: cycle columns independent modulo boundaries
        linalg::EchelonSpace seen = bnd;
        std::vector<std::vector<uint32_t>> reps;
        for (int j = 0; j < cycles.cols; ++j) {
            std::vector<uint32_t> col(cycles.rows);
            for (int i = 0; i < cycles.rows; ++i) col[i] = cycles.at(i, j);
            auto copy = col;
            if (seen.insert(std::move(copy))) reps.push_back(std::move(col));
        }
        H.dims.dims.push_back((int)reps.size());
        linalg::Mat repm(F.rank(), (int)reps.size(), C.p);
        for (size_t j = 0; j < reps.size(); ++j)
            for (size_t i = 0; i < idx.size(); ++i) repm.at(idx[i], (int)j) = reps[j][i];
        H.reps.push_back(std::move(repm));
    }
    return H;
}

GradedDims homology_dims(const KComplex& C, int n) { return homology(C, n).dims; }

SliceBasis slice_basis(const Ring* R, const FreeModule& F, int d, const GroebnerBasis* ideal) {
    SliceBasis B;
    std::vector<Monomial> lts;
    if (ideal)
        for (auto& g : ideal->gens) lts.push_back(g.lead().m);
    for (int i = 0; i < F.rank(); ++i) {
        int md = d - F.degs[i];
        if (md < 0) continue;
        for (auto& m : monomials_of_degree(R, md)) {
            bool reducible = false;
            for (auto& l : lts)
                if (mono_divides(l, m)) {
                    reducible = true;
                    break;
                }
            if (!reducible) B.elems.push_back({i, m});
        }
    }
    return B;
}

linalg::Mat slice_matrix(const GradedMap& f, int d, const GroebnerBasis* ideal) {
    const Ring* R = f.ring();
    SliceBasis src = slice_basis(R, f.source(), d, ideal);
    SliceBasis tgt = slice_basis(R, f.target(), d + f.shift(), ideal);
    // index target basis
    std::map<std::pair<int, std::array<uint8_t, 8>>, int> tix;
    for (int k = 0; k < tgt.size(); ++k)
        tix[{tgt.elems[k].first, tgt.elems[k].second.e}] = k;
    linalg::Mat m(tgt.size(), src.size(), R->fp.p);
    for (int j = 0; j < src.size(); ++j) {
        auto [gen, mono] = src.elems[j];
        for (auto& [row, p] : f.col(gen)) {
            Polynomial q = p.times_term(mono, 1);
            if (ideal) q = poly_normal_form(q, *ideal);
            for (auto& tm : q.terms()) {
                auto it = tix.find({row, tm.m.e});
                if (it == tix.end()) fail(ErrorKind::Internal, "slice: missing target monomial");
                m.at(it->second, j) = R->fp.add(m.at(it->second, j), tm.c);
            }
        }
    }
    return m;
}

int homology_dim_at(const ChainComplex& C, int i, int d, const GroebnerBasis* ideal) {
    linalg::Mat di = slice_matrix(C.dif(i), d, ideal);
    linalg::Mat di1 = slice_matrix(C.dif(i + 1), d, ideal);
    int nullity = di.cols - linalg::rank_of(di);
    return nullity - linalg::rank_of(di1);
}

}  // namespace torext
