#include "torext/homotopy.hpp"

#include <algorithm>

#include "torext/parallel.hpp"

namespace torext {

namespace {

GradedMap scalar_diagonal(const Ring* R, const FreeModule& F, const Polynomial& f) {
    GradedMap m(R, F, F, f.degree());
    for (int i = 0; i < F.rank(); ++i) m.set(i, i, f);
    return m;
}

}  // namespace

ImageSolver::ImageSolver(const GradedMap& A, std::vector<Polynomial> quotient, int tie_break)
    : ring_(A.ring()), A_(A),
      eng_(A.ring(), A.target(), std::move(quotient), GBOptions{1 << 20, true, ModuleOrder::top()}) {
    perm_.resize(A.cols());
    for (int j = 0; j < A.cols(); ++j) perm_[j] = j;
    if (tie_break) std::reverse(perm_.begin(), perm_.end());
    for (int j : perm_) eng_.add_generator(mv_from_column(A, j, ModuleOrder::top()));
}

std::optional<std::vector<Polynomial>> ImageSolver::solve(const ModVec& b) {
    if (b.is_zero()) return std::vector<Polynomial>(A_.cols(), Polynomial::zero(ring_));
    eng_.run(modvec_degree(b, A_.target()));
    auto nf = eng_.normal_form(b);
    if (!nf.rem.is_zero()) return std::nullopt;
    std::vector<Polynomial> out(A_.cols(), Polynomial::zero(ring_));
    for (auto& t : nf.combo.t) {
        int col = perm_[t.comp];
        out[col] = out[col] + Polynomial::monomial(ring_, t.m, t.c);
    }
    return out;
}

bool ImageSolver::contains(const ModVec& b) {
    if (b.is_zero()) return true;
    eng_.run(modvec_degree(b, A_.target()));
    return eng_.contains(b);
}

std::optional<GradedMap> ImageSolver::solve_map(const GradedMap& B, int extra_shift) {
    GradedMap X(ring_, B.source(), A_.source(), B.shift() - A_.shift() + extra_shift);
    for (int j = 0; j < B.cols(); ++j) {
        ModVec col = mv_from_column(B, j, ModuleOrder::top());
        auto x = solve(col);
        if (!x) return std::nullopt;
        for (int i = 0; i < A_.cols(); ++i)
            if (!(*x)[i].is_zero()) X.set(i, j, std::move((*x)[i]));
    }
    return X;
}

std::vector<GradedMap> compute_homotopy(const ChainComplex& F, const Polynomial& f,
                                        int tie_break) {
    const Ring* R = F.ring();
    if (!f.is_homogeneous()) fail(ErrorKind::HomogeneityError, "homotopy: f must be homogeneous");
    int len = F.hi();
    std::vector<GradedMap> sigma;
    if (f.is_zero()) {
        for (int p = 0; p < len; ++p)
            sigma.push_back(GradedMap::zero(R, F.term(p), F.term(p + 1), 0));
        return sigma;
    }
    GradedMap prev;  // sigma_{p-1}
    for (int p = 0; p < len; ++p) {
        GradedMap B = scalar_diagonal(R, F.term(p), f);
        if (p > 0) B = B + (-compose(prev, F.dif(p)));
        ImageSolver solver(F.dif(p + 1), {}, tie_break);
        auto X = solver.solve_map(B, 0);
        if (!X) {
            if (p == 0)
                fail(ErrorKind::AnnihilationError, "f does not annihilate the resolved module");
            fail(ErrorKind::Internal, "homotopy lift failed beyond degree 0");
        }
        sigma.push_back(*X);
        prev = sigma.back();
    }
    // consistency at the top of a finite resolution
    GradedMap Btop = scalar_diagonal(R, F.term(len), f) + (-compose(prev, F.dif(len)));
    if (!Btop.is_zero())
        fail(ErrorKind::ShapeError, "homotopy: complex is not a full finite resolution");
    return sigma;
}

HomotopySystem compute_homotopies(const ChainComplex& F, std::vector<Polynomial> f,
                                  int tie_break) {
    HomotopySystem H;
    H.base = F;
    H.f = f;
    H.sigma.resize(f.size());
    parallel_for((int)f.size(),
                 [&](int i) { H.sigma[i] = compute_homotopy(F, f[i], tie_break); });
    return H;
}

HomotopyRelationReport verify_homotopy_relations(const HomotopySystem& H) {
    const ChainComplex& F = H.base;
    const Ring* R = F.ring();
    int len = F.hi();
    HomotopyRelationReport rep;
    for (size_t i = 0; i < H.f.size(); ++i)
        for (size_t j = 0; j <= i; ++j) {
            // N_p : F_p -> F_{p+2}
            std::vector<GradedMap> N;
            bool exact = true;
            for (int p = 0; p + 2 <= len; ++p) {
                GradedMap n = compose(H.sigma[i][p + 1], H.sigma[j][p]);
                if (i != j) n = n + compose(H.sigma[j][p + 1], H.sigma[i][p]);
                if (!n.is_zero()) exact = false;
                N.push_back(n);
            }
            bool certified = true;
            if (!exact) {
                // alpha_p : F_p -> F_{p+3} with d.alpha - alpha.d = N
                std::vector<GradedMap> alpha;
                for (int p = 0; p + 3 <= len; ++p) {
                    GradedMap rhs = N[p];
                    if (p > 0) rhs = rhs + compose(alpha[p - 1], F.dif(p));
                    ImageSolver solver(F.dif(p + 3), {});
                    auto X = solver.solve_map(rhs, 0);
                    if (!X) {
                        certified = false;
                        break;
                    }
                    alpha.push_back(*X);
                }
                if (certified) {
                    // re-check the certificate and the trailing positions
                    for (int p = 0; p + 2 <= len; ++p) {
                        GradedMap lhs(R, F.term(p), F.term(p + 2),
                                      H.f[i].degree() + H.f[j].degree());
                        bool have = false;
                        if (p + 3 <= len && p < (int)alpha.size()) {
                            lhs = compose(F.dif(p + 3), alpha[p]);
                            have = true;
                        }
                        if (p > 0 && p - 1 < (int)alpha.size()) {
                            GradedMap t = -compose(alpha[p - 1], F.dif(p));
                            lhs = have ? lhs + t : t;
                            have = true;
                        }
                        GradedMap diff = have ? lhs + (-N[p]) : -N[p];
                        if (!diff.is_zero()) {
                            certified = false;
                            break;
                        }
                    }
                }
            }
            rep.entries.push_back({(int)i, (int)j, exact, exact || certified});
            if (!(exact || certified)) rep.all_certified = false;
        }
    return rep;
}

EModule e_action_on_tor(const HomotopySystem& H) {
    const ChainComplex& F = H.base;
    for (int p = 1; p <= F.hi(); ++p)
        if (!is_minimal(F.dif(p)))
            fail(ErrorKind::MinimalityError, "e_action_on_tor: base resolution must be minimal");
    EModule T;
    T.c = (int)H.f.size();
    T.p = F.ring()->fp.p;
    T.lo = 0;
    for (int p = 0; p <= F.hi(); ++p) T.dims.push_back(F.term(p).rank());
    T.op.assign(T.c, {});
    for (int i = 0; i < T.c; ++i) {
        T.op[i].resize(T.dims.size());
        for (int p = 0; p <= F.hi(); ++p) {
            linalg::Mat m(T.dim_at(p + 1), T.dim_at(p), T.p);
            if (p < F.hi()) {
                const GradedMap& s = H.sigma[i][p];
                for (int j = 0; j < s.cols(); ++j)
                    for (auto& [r, poly] : s.col(j)) {
                        uint32_t cst = poly.constant_term();
                        if (cst) m.at(r, j) = cst;
                    }
            }
            T.op[i][p] = std::move(m);
        }
    }
    T.check_relations();
    return T;
}

EModule e_action_on_tor_via_homology(const HomotopySystem& H) {
    const ChainComplex& F = H.base;
    KComplex K = reduce_mod_m(F);
    uint32_t p = K.p;
    int len = F.hi();
    std::vector<HomologyAtDegree> hom;
    for (int n = 0; n <= len; ++n) hom.push_back(homology(K, n));
    EModule T;
    T.c = (int)H.f.size();
    T.p = p;
    T.lo = 0;
    // basis per homological degree: representative columns, internal degrees ascending
    std::vector<linalg::Mat> basis;  // term-rank x hdim
    for (int n = 0; n <= len; ++n) {
        int total = hom[n].dims.total();
        linalg::Mat b(F.term(n).rank(), total, p);
        int col = 0;
        for (size_t k = 0; k < hom[n].reps.size(); ++k)
            for (int j = 0; j < hom[n].reps[k].cols; ++j) {
                for (int r = 0; r < b.rows; ++r) b.at(r, col) = hom[n].reps[k].at(r, j);
                ++col;
            }
        T.dims.push_back(total);
        basis.push_back(std::move(b));
    }
    T.op.assign(T.c, {});
    for (int i = 0; i < T.c; ++i) {
        T.op[i].resize(T.dims.size());
        for (int n = 0; n <= len; ++n) {
            linalg::Mat m(T.dim_at(n + 1), T.dim_at(n), p);
            if (n < len && T.dim_at(n + 1) > 0 && T.dim_at(n) > 0) {
                // constant part of sigma_i as a scalar matrix
                linalg::Mat sbar(F.term(n + 1).rank(), F.term(n).rank(), p);
                const GradedMap& s = H.sigma[i][n];
                for (int j = 0; j < s.cols(); ++j)
                    for (auto& [r, poly] : s.col(j)) {
                        uint32_t cst = poly.constant_term();
                        if (cst) sbar.at(r, j) = cst;
                    }
                linalg::Mat img = linalg::mul(sbar, basis[n]);
                // express modulo boundaries: solve [basis | boundaries] x = img column
                linalg::Mat bnd = (n + 2 <= len) ? K.dif[n + 2] : linalg::Mat(img.rows, 0, p);
                linalg::Mat aug(img.rows, basis[n + 1].cols + bnd.cols, p);
                for (int r = 0; r < img.rows; ++r) {
                    for (int cc = 0; cc < basis[n + 1].cols; ++cc)
                        aug.at(r, cc) = basis[n + 1].at(r, cc);
                    for (int cc = 0; cc < bnd.cols; ++cc)
                        aug.at(r, basis[n + 1].cols + cc) = bnd.at(r, cc);
                }
                for (int col = 0; col < img.cols; ++col) {
                    std::vector<uint32_t> v(img.rows);
                    for (int r = 0; r < img.rows; ++r) v[r] = img.at(r, col);
                    auto x = linalg::solve(aug, v);
                    if (!x) fail(ErrorKind::Internal, "homotopy action: cycle not expressible");
                    for (int r = 0; r < T.dim_at(n + 1); ++r) m.at(r, col) = (*x)[r];
                }
            }
            T.op[i][n] = std::move(m);
        }
    }
    T.check_relations();
    return T;
}

}  // namespace torext
