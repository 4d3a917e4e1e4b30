#include "torext/groebner.hpp"

#include <algorithm>

namespace torext {

bool ModuleOrder::greater(int c1, const Monomial& m1, int c2, const Monomial& m2) const {
    if (kind == TopGrevlex) {
        if (!(m1 == m2)) return grevlex_greater(m1, m2);
        return c1 < c2;
    }
    Monomial a = mono_mul(m1, parent_mono[c1]);
    Monomial b = mono_mul(m2, parent_mono[c2]);
    int pa = parent_comp[c1], pb = parent_comp[c2];
    if (!(a == b)) return grevlex_greater(a, b);
    if (pa != pb) return pa < pb;
    return c1 < c2;
}

int modvec_degree(const ModVec& v, const FreeModule& ambient) {
    if (v.is_zero()) return -1;
    return ambient.degs[v.t[0].comp] + v.t[0].m.deg();
}

bool modvec_homogeneous(const ModVec& v, const FreeModule& ambient) {
    if (v.is_zero()) return true;
    int d = modvec_degree(v, ambient);
    for (auto& t : v.t)
        if (ambient.degs[t.comp] + t.m.deg() != d) return false;
    return true;
}

ModVec mv_from_column(const GradedMap& f, int j, const ModuleOrder& ord) {
    std::vector<MTerm> terms;
    for (auto& [i, p] : f.col(j))
        for (auto& tm : p.terms()) terms.push_back({i, tm.m, tm.c});
    PrimeField fp = f.ring()->fp;
    return mv_sorted(std::move(terms), ord, fp);
}

ModVec mv_unit(int comp) {
    ModVec v;
    v.t.push_back({comp, Monomial::one(), 1});
    return v;
}

ModVec mv_scaled(const ModVec& v, uint32_t c, const PrimeField& fp) {
    c %= fp.p;
    ModVec r;
    if (!c) return r;
    r.t = v.t;
    for (auto& t : r.t) t.c = fp.mul(t.c, c);
    return r;
}

ModVec mv_sorted(std::vector<MTerm> terms, const ModuleOrder& ord, const PrimeField& fp) {
    std::sort(terms.begin(), terms.end(), [&](const MTerm& a, const MTerm& b) {
        return ord.greater(a.comp, a.m, b.comp, b.m);
    });
    ModVec r;
    for (auto& t : terms) {
        uint32_t c = t.c % fp.p;
        if (!r.t.empty() && r.t.back().comp == t.comp && r.t.back().m == t.m) {
            r.t.back().c = fp.add(r.t.back().c, c);
            if (r.t.back().c == 0) r.t.pop_back();
        } else if (c) {
            r.t.push_back({t.comp, t.m, c});
        }
    }
    return r;
}

ModVec mv_axpy(const ModVec& a, uint32_t c, const Monomial& m, const ModVec& b,
               const ModuleOrder& ord, const PrimeField& fp) {
    // a - c * m * b, both sorted in ord
    ModVec r;
    r.t.reserve(a.t.size() + b.t.size());
    size_t i = 0, j = 0;
    while (i < a.t.size() || j < b.t.size()) {
        const MTerm* ta = i < a.t.size() ? &a.t[i] : nullptr;
        MTerm tb;
        if (j < b.t.size()) {
            tb = b.t[j];
            tb.m = mono_mul(tb.m, m);
            tb.c = fp.neg(fp.mul(tb.c, c));
        }
        if (ta && j < b.t.size() && ta->comp == tb.comp && ta->m == tb.m) {
            uint32_t s = fp.add(ta->c, tb.c);
            if (s) r.t.push_back({ta->comp, ta->m, s});
            ++i, ++j;
        } else if (ta && (j >= b.t.size() || ord.greater(ta->comp, ta->m, tb.comp, tb.m))) {
            r.t.push_back(*ta);
            ++i;
        } else {
            r.t.push_back(tb);
            ++j;
        }
    }
    return r;
}

GBEngine::GBEngine(const Ring* R, FreeModule ambient, std::vector<Polynomial> quotient,
                   GBOptions opt)
    : R_(R), ambient_(std::move(ambient)), quotient_(std::move(quotient)), opt_(std::move(opt)),
      by_comp_(ambient_.rank()) {
    for (auto& q : quotient_) {
        if (!q.is_homogeneous()) fail(ErrorKind::HomogeneityError, "quotient ideal not homogeneous");
        for (int r = 0; r < ambient_.rank(); ++r) {
            std::vector<MTerm> terms;
            for (auto& tm : q.terms()) terms.push_back({r, tm.m, tm.c});
            add_aux(mv_sorted(std::move(terms), opt_.order, R_->fp));
        }
    }
}

int GBEngine::add_generator(ModVec v) {
    if (!modvec_homogeneous(v, ambient_))
        fail(ErrorKind::HomogeneityError, "generator not homogeneous");
    int comp = n_tracked_++;
    int deg = v.is_zero() ? 0 : modvec_degree(v, ambient_);
    track_ambient_.degs.push_back(deg);
    Elem e;
    e.v = std::move(v);
    if (opt_.track) e.w = mv_unit(comp);
    e.deg = deg;
    if (e.v.is_zero()) {
        if (opt_.track) syz_.push_back(mv_unit(comp));
        return comp;
    }
    pending_.emplace(deg, std::move(e));
    done_through_ = -1;
    return comp;
}

void GBEngine::add_aux(ModVec v) {
    if (v.is_zero()) return;
    if (!modvec_homogeneous(v, ambient_))
        fail(ErrorKind::HomogeneityError, "element not homogeneous");
    Elem e;
    e.v = std::move(v);
    e.deg = modvec_degree(e.v, ambient_);
    pending_.emplace(e.deg, std::move(e));
    done_through_ = -1;
}

void GBEngine::reduce_full(ModVec& v, ModVec& w) const {
    // full normal form; reducers by smallest basis index first
    ModVec rem;
    const ModuleOrder& ord = opt_.order;
    const PrimeField& fp = R_->fp;
    while (!v.is_zero()) {
        const MTerm& t = v.lead();
        int red = -1;
        for (int idx : by_comp_[t.comp]) {
            if (mono_divides(basis_[idx].v.lead().m, t.m)) {
                red = idx;
                break;
            }
        }
        if (red < 0) {
            rem.t.push_back(t);
            v.t.erase(v.t.begin());
            continue;
        }
        const Elem& g = basis_[red];
        Monomial q = mono_div(t.m, g.v.lead().m);
        uint32_t c = t.c;  // basis is monic
        v = mv_axpy(v, c, q, g.v, ord, fp);
        if (opt_.track && !g.w.is_zero()) w = mv_axpy(w, c, q, g.w, ord, fp);
    }
    v = std::move(rem);
}

void GBEngine::insert_basis(ModVec v, ModVec w, int deg) {
    const PrimeField& fp = R_->fp;
    uint32_t inv = fp.inv(v.lead().c);
    if (inv != 1) {
        v = mv_scaled(v, inv, fp);
        w = mv_scaled(w, inv, fp);
    }
    int t = (int)basis_.size();
    int comp = v.lead().comp;
    Monomial ltm = v.lead().m;

    // Gebauer-Moeller update. Only pairs with equal leading component exist.
    // B criterion against existing pairs:
    for (auto it = pairs_.begin(); it != pairs_.end();) {
        const auto& [key, lcm_ij] = *it;
        int i = key.i, j = key.j;
        if (basis_[i].v.lead().comp == comp && mono_divides(ltm, lcm_ij) &&
            !(mono_lcm(basis_[i].v.lead().m, ltm) == lcm_ij) &&
            !(mono_lcm(basis_[j].v.lead().m, ltm) == lcm_ij)) {
            it = pairs_.erase(it);
        } else {
            ++it;
        }
    }
    // candidate new pairs
    struct Cand {
        int i;
        Monomial lcm;
        int deg;
        bool dead = false;
    };
    std::vector<Cand> cands;
    for (int i : by_comp_[comp]) {
        Monomial l = mono_lcm(basis_[i].v.lead().m, ltm);
        cands.push_back({i, l, l.deg() + ambient_.degs[comp], false});
    }
    // M criterion: drop candidates whose lcm is a proper multiple of another's
    for (auto& a : cands)
        for (auto& b : cands) {
            if (a.i == b.i || b.dead) continue;
            if (!(a.lcm == b.lcm) && mono_divides(b.lcm, a.lcm)) a.dead = true;
        }
    // F criterion: among equal lcms keep the smallest index
    for (auto& a : cands) {
        if (a.dead) continue;
        for (auto& b : cands)
            if (!b.dead && b.i < a.i && a.lcm == b.lcm) {
                a.dead = true;
                break;
            }
    }
    for (auto& c : cands) {
        if (c.dead || c.deg > opt_.degree_cap) continue;
        pairs_.emplace(PairKey{c.deg, c.i, t}, c.lcm);
    }

    by_comp_[comp].push_back(t);
    Elem e;
    e.v = std::move(v);
    e.w = std::move(w);
    e.deg = deg;
    basis_.push_back(std::move(e));
}

void GBEngine::process(Elem e) {
    reduce_full(e.v, e.w);
    if (e.v.is_zero()) {
        if (opt_.track && !e.w.is_zero()) syz_.push_back(std::move(e.w));
        return;
    }
    insert_basis(std::move(e.v), std::move(e.w), e.deg);
}

void GBEngine::run(int through_degree) {
    int cap = std::min(through_degree, opt_.degree_cap);
    while (true) {
        int pd = pairs_.empty() ? INT32_MAX : pairs_.begin()->first.deg;
        int id = pending_.empty() ? INT32_MAX : pending_.begin()->first;
        int d = std::min(pd, id);
        if (d == INT32_MAX || d > cap) break;
        if (id <= pd) {
            Elem e = std::move(pending_.begin()->second);
            pending_.erase(pending_.begin());
            process(std::move(e));
        } else {
            auto it = pairs_.begin();
            auto [key, lcm] = *it;
            pairs_.erase(it);
            const Elem& gi = basis_[key.i];
            const Elem& gj = basis_[key.j];
            Monomial qi = mono_div(lcm, gi.v.lead().m);
            Monomial qj = mono_div(lcm, gj.v.lead().m);
            const ModuleOrder& ord = opt_.order;
            const PrimeField& fp = R_->fp;
            // both monic: spair = qi*gi - qj*gj
            ModVec zero;
            ModVec v = mv_axpy(zero, fp.p - 1, qi, gi.v, ord, fp);
            v = mv_axpy(v, 1, qj, gj.v, ord, fp);
            Elem e;
            e.v = std::move(v);
            if (opt_.track) {
                ModVec w = mv_axpy(zero, fp.p - 1, qi, gi.w, ord, fp);
                e.w = mv_axpy(w, 1, qj, gj.w, ord, fp);
            }
            e.deg = key.deg;
            process(std::move(e));
        }
        done_through_ = d;
    }
    if (done_through_ < cap) done_through_ = cap;
}

GBEngine::NFResult GBEngine::normal_form(const ModVec& v) const {
    NFResult r;
    r.rem = v;
    reduce_full(r.rem, r.combo);
    // combo currently accumulates -(coefficients); the invariant maintained by
    // reduce_full is rem = v - sum(combo parts applied); flip sign so that
    // v = combo . gens + rem holds.
    PrimeField fp = R_->fp;
    for (auto& t : r.combo.t) t.c = fp.neg(t.c);
    return r;
}

bool GBEngine::contains(const ModVec& v) const {
    ModVec rem = v, w;
    reduce_full(rem, w);
    return rem.is_zero();
}

std::vector<ModVec> GBEngine::reduced_basis() const {
    // minimal set of leading terms
    std::vector<int> order_idx(basis_.size());
    for (size_t i = 0; i < basis_.size(); ++i) order_idx[i] = (int)i;
    std::sort(order_idx.begin(), order_idx.end(), [&](int a, int b) {
        if (basis_[a].deg != basis_[b].deg) return basis_[a].deg < basis_[b].deg;
        return opt_.order.greater(basis_[b].v.lead(), basis_[a].v.lead());
    });
    std::vector<int> chosen;
    for (int i : order_idx) {
        const MTerm& lt = basis_[i].v.lead();
        bool divisible = false;
        for (int j : chosen) {
            const MTerm& lj = basis_[j].v.lead();
            if (lj.comp == lt.comp && mono_divides(lj.m, lt.m)) {
                divisible = true;
                break;
            }
        }
        if (!divisible) chosen.push_back(i);
    }
    // tail-reduce each against the others
    std::vector<ModVec> out;
    const PrimeField& fp = R_->fp;
    for (int i : chosen) {
        ModVec v = basis_[i].v;
        ModVec rem;
        while (!v.is_zero()) {
            const MTerm& t = v.lead();
            int red = -1;
            for (int j : chosen) {
                if (j == i && rem.is_zero()) continue;  // skip own leading term only
                const MTerm& lj = basis_[j].v.lead();
                if (j != i && lj.comp == t.comp && mono_divides(lj.m, t.m)) {
                    red = j;
                    break;
                }
            }
            if (red < 0) {
                rem.t.push_back(t);
                v.t.erase(v.t.begin());
            } else {
                v = mv_axpy(v, t.c, mono_div(t.m, basis_[red].v.lead().m), basis_[red].v,
                            opt_.order, fp);
            }
        }
        out.push_back(std::move(rem));
    }
    std::sort(out.begin(), out.end(), [&](const ModVec& a, const ModVec& b) {
        int da = modvec_degree(a, ambient_), db = modvec_degree(b, ambient_);
        if (da != db) return da < db;
        return opt_.order.greater(b.lead(), a.lead());
    });
    return out;
}

int GroebnerBasis::max_lt_degree() const {
    int d = 0;
    for (auto& g : gens) {
        int gd = modvec_degree(g, ambient);
        d = std::max(d, gd);
    }
    return d;
}

GroebnerBasis buchberger(const Ring* R, const FreeModule& ambient,
                         const std::vector<ModVec>& gens, const ModuleOrder& order,
                         std::vector<Polynomial> quotient, int degree_cap) {
    GBOptions opt;
    opt.order = order;
    opt.degree_cap = degree_cap;
    GBEngine eng(R, ambient, quotient, opt);
    for (auto& g : gens) {
        if (!modvec_homogeneous(g, ambient))
            fail(ErrorKind::HomogeneityError, "buchberger: generators must be homogeneous");
        ModVec copy = g;
        eng.add_generator(std::move(copy));
    }
    eng.run_all();
    GroebnerBasis gb;
    gb.ring = R;
    gb.ambient = ambient;
    gb.quotient = std::move(quotient);
    gb.order = order;
    gb.gens = eng.reduced_basis();
    return gb;
}

ModVec normal_form(const ModVec& v, const GroebnerBasis& gb) {
    const PrimeField& fp = gb.ring->fp;
    ModVec cur = v, rem;
    while (!cur.is_zero()) {
        const MTerm& t = cur.lead();
        int red = -1;
        for (size_t j = 0; j < gb.gens.size(); ++j) {
            const MTerm& lj = gb.gens[j].lead();
            if (lj.comp == t.comp && mono_divides(lj.m, t.m)) {
                red = (int)j;
                break;
            }
        }
        if (red < 0) {
            rem.t.push_back(t);
            cur.t.erase(cur.t.begin());
        } else {
            uint32_t c = fp.mul(t.c, fp.inv(gb.gens[red].lead().c));
            cur = mv_axpy(cur, c, mono_div(t.m, gb.gens[red].lead().m), gb.gens[red], gb.order, fp);
        }
    }
    return rem;
}

std::vector<ModVec> minimalize_generators(const Ring* R, const FreeModule& ambient,
                                          std::vector<ModVec> gens,
                                          std::vector<Polynomial> quotient) {
    ModuleOrder ord = ModuleOrder::top();
    std::sort(gens.begin(), gens.end(), [&](const ModVec& a, const ModVec& b) {
        int da = modvec_degree(a, ambient), db = modvec_degree(b, ambient);
        if (da != db) return da < db;
        if (a.is_zero() || b.is_zero()) return b.is_zero() && !a.is_zero();
        return ord.greater(a.lead(), b.lead());
    });
    GBOptions opt;
    GBEngine eng(R, ambient, std::move(quotient), opt);
    std::vector<ModVec> accepted;
    for (auto& g : gens) {
        if (g.is_zero()) continue;
        int d = modvec_degree(g, ambient);
        eng.run(d);
        auto nf = eng.normal_form(g);
        if (nf.rem.is_zero()) continue;
        uint32_t inv = R->fp.inv(nf.rem.lead().c);
        ModVec v = mv_scaled(nf.rem, inv, R->fp);
        accepted.push_back(v);
        eng.add_generator(std::move(v));
    }
    std::sort(accepted.begin(), accepted.end(), [&](const ModVec& a, const ModVec& b) {
        int da = modvec_degree(a, ambient), db = modvec_degree(b, ambient);
        if (da != db) return da < db;
        return ord.greater(a.lead(), b.lead());
    });
    return accepted;
}

std::vector<ModVec> kernel(const GradedMap& f, std::vector<Polynomial> quotient, int degree_cap) {
    GBOptions opt;
    opt.track = true;
    opt.degree_cap = degree_cap;
    GBEngine eng(f.ring(), f.target(), quotient, opt);
    for (int j = 0; j < f.cols(); ++j) {
        ModVec col = mv_from_column(f, j, opt.order);
        if (!modvec_homogeneous(col, f.target()))
            fail(ErrorKind::HomogeneityError, "kernel: map must be homogeneous");
        // degree bookkeeping: track component degree is the source degree
        int want = f.source().degs[j] + f.shift();
        if (!col.is_zero() && modvec_degree(col, f.target()) != want)
            fail(ErrorKind::HomogeneityError, "kernel: column degree mismatch");
        eng.add_generator(std::move(col));
    }
    eng.run_all();
    // syzygies live in the free module on the columns, with degrees as in f.source()
    FreeModule src;
    src.degs = f.source().degs;
    for (auto& d : src.degs) d += f.shift();
    std::vector<ModVec> raw = eng.syzygies();
    return minimalize_generators(f.ring(), src, std::move(raw), std::move(quotient));
}

HilbertFunction hilbert_function(const GroebnerBasis& gb, int through_degree) {
    HilbertFunction hf;
    hf.lo = 0;
    int lo = 0;
    for (int d : gb.ambient.degs) lo = std::min(lo, d);
    hf.lo = lo;
    hf.dims.assign(through_degree - lo + 1, 0);
    // leading terms per component
    std::vector<std::vector<Monomial>> lts(gb.ambient.rank());
    for (auto& g : gb.gens) lts[g.lead().comp].push_back(g.lead().m);
    for (int comp = 0; comp < gb.ambient.rank(); ++comp) {
        int cd = gb.ambient.degs[comp];
        for (int d = std::max(lo, cd); d <= through_degree; ++d) {
            for (auto& m : monomials_of_degree(gb.ring, d - cd)) {
                bool in_lt = false;
                for (auto& l : lts[comp])
                    if (mono_divides(l, m)) {
                        in_lt = true;
                        break;
                    }
                if (!in_lt) hf.dims[d - lo]++;
            }
        }
    }
    return hf;
}

std::vector<Monomial> monomials_of_degree(const Ring* R, int d) {
    std::vector<Monomial> out;
    if (d < 0) return out;
    Monomial m;
    // enumerate exponent vectors of total degree d
    std::vector<int> e(R->nvars, 0);
    int n = R->nvars;
    auto rec = [&](auto&& self, int pos, int rem) -> void {
        if (pos == n - 1) {
            e[pos] = rem;
            Monomial mm;
            for (int i = 0; i < n; ++i) mm.e[i] = (uint8_t)e[i];
            out.push_back(mm);
            return;
        }
        for (int k = rem; k >= 0; --k) {
            e[pos] = k;
            self(self, pos + 1, rem - k);
        }
    };
    rec(rec, 0, d);
    std::sort(out.begin(), out.end(), grevlex_greater);
    return out;
}

int krull_dim_quotient(const GroebnerBasis& ideal) {
    int n = ideal.ring->nvars;
    std::vector<uint32_t> supports;
    for (auto& g : ideal.gens) {
        uint32_t s = 0;
        for (int i = 0; i < n; ++i)
            if (g.lead().m.e[i]) s |= 1u << i;
        supports.push_back(s);
    }
    int best = -1;
    for (uint32_t sub = 0; sub < (1u << n); ++sub) {
        bool ok = true;
        for (uint32_t s : supports)
            if ((s & sub) == s) {
                ok = false;  // a leading monomial lives entirely inside sub
                break;
            }
        if (ok) best = std::max(best, __builtin_popcount(sub));
    }
    return best;
}

GradedMap map_from_columns(const Ring* R, const FreeModule& target,
                           const std::vector<ModVec>& cols, int shift) {
    FreeModule src;
    for (auto& c : cols) src.degs.push_back(modvec_degree(c, target) - shift);
    GradedMap m(R, src, target, shift);
    for (size_t j = 0; j < cols.size(); ++j) {
        // gather per-row polynomials
        std::map<int, std::vector<PTerm>> rows;
        for (auto& t : cols[j].t) rows[t.comp].push_back({t.m, t.c});
        for (auto& [i, terms] : rows) m.set(i, (int)j, Polynomial(R, terms));
    }
    return m;
}

}  // namespace torext
