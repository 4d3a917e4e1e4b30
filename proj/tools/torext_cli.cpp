// Command-line surface: parse ring / sequence / module input, run the
// pipelines, and render Betti tables or JSON.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "torext/io.hpp"
#include "torext/tor_module.hpp"
#include "torext/verify_suite.hpp"

using namespace torext;

namespace {

struct JobSpec {
    const Ring* ring = nullptr;
    std::vector<Polynomial> f;
    std::string module_kind;  // syzk | coker | presentation
    std::string module_arg;
    int length = 6;
    int window = 6;
    bool over_s_only = false;
    bool json = false;
};

struct Flags {
    std::string ring_flag, f_flag, module_flag, spec_file;
    int length = -1;
    int window = -1;
    bool over_s_only = false;
    bool json = false;
};

void parse_module_field(JobSpec& spec, const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) fail(ErrorKind::Parse, "module must look like kind:args");
    spec.module_kind = text.substr(0, colon);
    spec.module_arg = text.substr(colon + 1);
    if (spec.module_kind != "syzk" && spec.module_kind != "coker" &&
        spec.module_kind != "presentation")
        fail(ErrorKind::Parse, "unknown module kind '" + spec.module_kind + "'");
}

JobSpec build_spec(const Flags& fl) {
    JobSpec spec;
    if (!fl.spec_file.empty()) {
        std::ifstream in(fl.spec_file);
        if (!in) fail(ErrorKind::Parse, "cannot open spec file " + fl.spec_file);
        std::stringstream ss;
        ss << in.rdbuf();
        std::string text = ss.str();
        // fields are ;-terminated: ring ...; f=...; module=...;
        std::string ring_decl, f_text, module_text;
        std::string cur;
        for (char ch : text) {
            if (ch == ';') {
                std::string s = cur;
                cur.clear();
                size_t b = s.find_first_not_of(" \t\r\n");
                if (b == std::string::npos) continue;
                s = s.substr(b);
                if (s.rfind("ring", 0) == 0)
                    ring_decl = s + ";";
                else if (s.rfind("f=", 0) == 0)
                    f_text = s.substr(2);
                else if (s.rfind("module=", 0) == 0)
                    module_text = s.substr(7);
                else
                    fail(ErrorKind::Parse, "unknown spec field: " + s);
            } else
                cur += ch;
        }
        if (ring_decl.empty()) fail(ErrorKind::Parse, "spec file missing ring declaration");
        spec.ring = intern_ring(parse_ring_decl(ring_decl));
        if (!f_text.empty()) spec.f = parse_poly_list(f_text, spec.ring);
        if (!module_text.empty()) parse_module_field(spec, module_text);
    }
    if (!fl.ring_flag.empty()) spec.ring = intern_ring(parse_ring_flag(fl.ring_flag));
    if (!spec.ring) fail(ErrorKind::Parse, "no ring given (use --ring or --spec-file)");
    if (!fl.f_flag.empty()) spec.f = parse_poly_list(fl.f_flag, spec.ring);
    if (!fl.module_flag.empty()) parse_module_field(spec, fl.module_flag);
    if (fl.length >= 0) spec.length = fl.length;
    if (fl.window >= 0) spec.window = fl.window;
    spec.over_s_only = fl.over_s_only;
    spec.json = fl.json;
    if (spec.ring->fp.p <= 2) fail(ErrorKind::Parse, "characteristic must be an odd prime");
    // the sequence must be homogeneous and regular
    if (!spec.f.empty()) {
        for (auto& g : spec.f)
            if (g.is_zero() || !g.is_homogeneous())
                fail(ErrorKind::HomogeneityError, "sequence entries must be homogeneous");
        GroebnerBasis igb = ideal_gb(spec.ring, spec.f);
        int dim = krull_dim_quotient(igb);
        if (dim != spec.ring->nvars - (int)spec.f.size())
            fail(ErrorKind::ShapeError, "the given sequence is not a regular sequence");
    }
    return spec;
}

ModulePresentation make_module(const JobSpec& spec, ChainComplex* kres_out = nullptr) {
    const Ring* R = spec.ring;
    if (spec.module_kind == "syzk") {
        int i = std::atoi(spec.module_arg.c_str());
        if (i < 0) fail(ErrorKind::Parse, "syzygy index must be >= 0");
        if (spec.f.empty() || spec.over_s_only) {
            ModulePresentation k = ModulePresentation::residue_field(R, {});
            return syzygy_module(k, i);
        }
        ModulePresentation k = ModulePresentation::residue_field(R, spec.f);
        ChainComplex kres = resolve(k, i + 1);
        if (kres_out) *kres_out = kres;
        ModulePresentation N;
        N.ring = R;
        N.quotient = spec.f;
        N.pres = kres.dif(i + 1);
        return N;
    }
    if (spec.module_kind == "coker") {
        GradedMap m = parse_matrix(spec.module_arg, R);
        std::optional<GroebnerBasis> igb;
        if (!spec.f.empty() && !spec.over_s_only) {
            igb = ideal_gb(R, spec.f);
            m = reduce_entries(m, *igb);
        }
        return ModulePresentation{R, spec.over_s_only ? std::vector<Polynomial>{} : spec.f, m};
    }
    if (spec.module_kind == "presentation") {
        std::ifstream in(spec.module_arg);
        if (!in) fail(ErrorKind::Parse, "cannot open presentation file " + spec.module_arg);
        std::stringstream ss;
        ss << in.rdbuf();
        GradedMap m = parse_matrix(ss.str(), R);
        return ModulePresentation{R, spec.over_s_only ? std::vector<Polynomial>{} : spec.f, m};
    }
    fail(ErrorKind::Parse, "no module given");
}

// S-module presentation of the job's module (for the Tor pipeline)
ModulePresentation make_module_over_s(const JobSpec& spec) {
    const Ring* R = spec.ring;
    if (spec.module_kind == "syzk") {
        int i = std::atoi(spec.module_arg.c_str());
        ModulePresentation k = ModulePresentation::residue_field(R, spec.f);
        ChainComplex kres = resolve(k, i + 1);
        return syzygy_as_s_module(kres, spec.f, i);
    }
    // cokernel presentations: augment by the sequence
    ModulePresentation M = make_module(spec);
    GradedMap pres = M.pres;
    FreeModule src = pres.source();
    const FreeModule& tgt = pres.target();
    for (auto& fk : spec.f)
        for (int r = 0; r < tgt.rank(); ++r) src.degs.push_back(tgt.degs[r] + fk.degree());
    GradedMap wider(R, src, tgt, 0);
    for (int j = 0; j < pres.cols(); ++j)
        for (auto& [rr, poly] : pres.col(j)) wider.set(rr, j, poly);
    int col = pres.cols();
    for (auto& fk : spec.f)
        for (int r = 0; r < tgt.rank(); ++r) wider.set(r, col++, fk);
    return ModulePresentation{R, {}, wider};
}

int cmd_resolve(const JobSpec& spec) {
    ModulePresentation M = make_module(spec);
    ChainComplex C = resolve(M, spec.length);
    BettiTable t = betti(C);
    if (spec.json)
        std::cout << betti_json(t, spec.length) << "\n";
    else
        std::cout << render_betti(t, spec.length);
    return 0;
}

int cmd_tor(const JobSpec& spec) {
    if (spec.f.empty()) fail(ErrorKind::Parse, "tor needs a sequence (--f)");
    ModulePresentation Ms = make_module_over_s(spec);
    TorEModule tor = tor_emodule(Ms, spec.f);
    SubQuotient sq = tor_strand_split(tor.T);
    EFreeComplex res = e_free_resolution(tor.T, spec.window);
    BettiTable t = res.betti();
    if (spec.json) {
        nlohmann::json j;
        j["dims"] = tor.T.dims;
        j["operators"] = nlohmann::json::array();
        for (int i = 0; i < tor.T.c; ++i) {
            nlohmann::json op = nlohmann::json::array();
            for (auto& m : tor.T.op[i]) {
                nlohmann::json mat = nlohmann::json::array();
                for (int r = 0; r < m.rows; ++r) {
                    nlohmann::json row = nlohmann::json::array();
                    for (int c = 0; c < m.cols; ++c) row.push_back(m.at(r, c));
                    mat.push_back(row);
                }
                op.push_back(mat);
            }
            j["operators"].push_back(op);
        }
        j["Tprime_dims"] = sq.sub.dims;
        j["Tdoubleprime_dims"] = sq.quot.dims;
        j["betti_strands"] = nlohmann::json::parse(betti_json(t, spec.window));
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "Tor dims:";
        for (int d : tor.T.dims) std::cout << " " << d;
        std::cout << "\ngenerated part:";
        for (int d : sq.sub.dims) std::cout << " " << d;
        std::cout << "\nquotient part:";
        for (int d : sq.quot.dims) std::cout << " " << d;
        std::cout << "\n" << render_betti(t, spec.window);
    }
    return 0;
}

int cmd_ext(const JobSpec& spec) {
    if (spec.f.empty()) fail(ErrorKind::Parse, "ext needs a sequence (--f)");
    ModulePresentation M = make_module(spec);
    ChainComplex rres = resolve(M, std::max(spec.length, 2 * (int)spec.f.size() + 2));
    // layered gate
    std::vector<long long> rb;
    for (int i = 0; i <= rres.hi(); ++i) rb.push_back(rres.term(i).rank());
    infer_layer_ranks(rb, (int)spec.f.size());  // throws NotHighSyzygy if unfit
    LiftedResolution L = lift_resolution(rres, spec.f);
    ExtModule E = ext_rmodule(L, ci_operators(L));
    RHalfModule even = half_module(E, 0), odd = half_module(E, 1);
    RResolution er = r_free_resolution(even), orr = r_free_resolution(odd);
    const Ring* chiR = intern_ring(make_chi_ring(spec.ring->fp.p, (int)spec.f.size()));
    ExtStructureReport rep = ext_structure_report(even, chiR, spec.window);
    if (spec.json) {
        nlohmann::json j;
        j["even_betti"] = nlohmann::json::parse(betti_json(er.table));
        j["odd_betti"] = nlohmann::json::parse(betti_json(orr.table));
        j["even_regularity"] = er.regularity;
        j["odd_regularity_halfdeg"] = orr.regularity;
        j["free_rank"] = rep.free_rank;
        j["nonfree_hilbert"] = nlohmann::json::parse(dims_json(rep.nonfree_hilbert));
        j["nonfree_is_shifted_max_ideal"] = rep.nonfree_is_shifted_max_ideal;
        nlohmann::json pm = nlohmann::json::array();
        for (int r = 0; r < rep.nonfree_presentation.rows(); ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (int c = 0; c < rep.nonfree_presentation.cols(); ++c)
                row.push_back(rep.nonfree_presentation.entry(r, c).str());
            pm.push_back(row);
        }
        j["nonfree_presentation"] = pm;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "even part resolution:\n" << render_betti(er.table);
        std::cout << "odd part resolution:\n" << render_betti(orr.table);
        std::cout << "even regularity: " << er.regularity << "\n";
        std::cout << "free summands: " << rep.free_rank << "\n";
        std::cout << "nonfree Hilbert function:";
        for (int x : rep.nonfree_hilbert.dims) std::cout << " " << x;
        std::cout << "\nnonfree part is a shifted maximal ideal: "
                  << (rep.nonfree_is_shifted_max_ideal ? "yes" : "no") << "\n";
        std::cout << "nonfree presentation:\n";
        for (int r = 0; r < rep.nonfree_presentation.rows(); ++r) {
            for (int c = 0; c < rep.nonfree_presentation.cols(); ++c)
                std::cout << (c ? ", " : "[") << rep.nonfree_presentation.entry(r, c).str();
            std::cout << "]\n";
        }
    }
    return 0;
}

int cmd_gk(const JobSpec& spec) {
    if (spec.f.empty()) fail(ErrorKind::Parse, "gk needs a sequence (--f)");
    ModulePresentation M = make_module(spec);
    ChainComplex rres = resolve(M, spec.length);
    LiftedResolution L = lift_resolution(rres, spec.f);
    HigherCISystem T = higher_ci(L, std::max(2, spec.length));
    ChainComplex GK = build_gk(L, T);
    GK.check_d2();
    bool acyclic = true;
    int first_fail = -1;
    for (int i = 1; i + 1 <= GK.hi(); ++i)
        if (!kernel_contained_in_image(GK.dif(i), GK.dif(i + 1))) {
            acyclic = false;
            first_fail = i;
            break;
        }
    ChainComplex GKmin = minimize_gk(GK);
    BettiTable mint;
    for (int i = 0; i < GKmin.hi(); ++i)
        for (int dg : GKmin.term(i).degs) mint.b[{i, dg}]++;
    nlohmann::json j;
    j["blocks"] = nlohmann::json::array();
    int c = (int)spec.f.size();
    for (int m = 1; m <= GK.hi(); ++m) {
        nlohmann::json blocks = nlohmann::json::array();
        for (int q = 0; q <= std::min(c, m); ++q) {
            int pcol = m - q;
            if (pcol < 0 || pcol > L.bound) continue;
            for (int qq = 0; qq <= std::min(c, m - 1); ++qq) {
                int prow = m - 1 - qq;
                if (prow < 0 || prow > L.bound) continue;
                int i = pcol - prow;
                if (i < 0 || qq != q + i - 1) continue;
                nlohmann::json b;
                b["operator"] = i;
                b["source"] = {pcol, q};
                b["target"] = {prow, qq};
                blocks.push_back(b);
            }
        }
        nlohmann::json entry;
        entry["position"] = m;
        entry["blocks"] = blocks;
        j["blocks"].push_back(entry);
    }
    j["acyclic_in_window"] = acyclic;
    if (!acyclic) j["first_failure"] = first_fail;
    j["minimized_betti"] = nlohmann::json::parse(betti_json(mint));
    if (spec.json)
        std::cout << j.dump(2) << "\n";
    else {
        std::cout << "total complex ranks:";
        for (int i = 0; i <= GK.hi(); ++i) std::cout << " " << GK.term(i).rank();
        std::cout << "\nacyclic in window: " << (acyclic ? "yes" : "no") << "\n";
        std::cout << "minimized:\n" << render_betti(mint);
        std::cout << j["blocks"].dump() << "\n";
    }
    return acyclic ? 0 : 4;
}

int cmd_verify(bool include_stretch, bool json) {
    VerifyOptions opts;
    opts.include_stretch = include_stretch;
    auto results = run_verification_suite(opts);
    bool all = true;
    for (auto& r : results) {
        if (!json)
            std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  ("
                      << (int)(r.seconds * 1000) << " ms)" << (r.pass ? "" : "  " + r.detail)
                      << "\n";
        all = all && r.pass;
    }
    if (json) std::cout << verification_json(results) << "\n";
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graded resolutions over complete intersections: Tor and Ext module structure"};
    app.require_subcommand(1);

    Flags fl;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--ring", fl.ring_flag, "ring as p=<prime>,<vars> (x1..x3 expands)");
        cmd->add_option("--f", fl.f_flag, "comma-separated regular sequence");
        cmd->add_option("--module", fl.module_flag, "module as syzk:<i> | coker:<matrix> | presentation:<file>");
        cmd->add_option("--spec-file", fl.spec_file, "file with ring/f/module declarations");
        cmd->add_option("--length", fl.length, "resolution length");
        cmd->add_option("--window", fl.window, "computation window");
        cmd->add_flag("--ring-only-S", fl.over_s_only, "work over the polynomial ring, ignoring f");
        cmd->add_flag("--json", fl.json, "machine-readable output");
    };

    auto* resolve_cmd = app.add_subcommand("resolve", "minimal free resolution and Betti table");
    add_common(resolve_cmd);
    auto* tor_cmd = app.add_subcommand("tor", "exterior module structure on Tor");
    add_common(tor_cmd);
    auto* ext_cmd = app.add_subcommand("ext", "module structure on Ext over the operator ring");
    add_common(ext_cmd);
    auto* gk_cmd = app.add_subcommand("gk", "inverse construction of the S-free resolution");
    add_common(gk_cmd);
    auto* verify_cmd = app.add_subcommand("verify", "run the fixture verification suite");
    bool stretch = false, vjson = false;
    verify_cmd->add_flag("--stretch", stretch, "include the slow non-split fixture");
    verify_cmd->add_flag("--json", vjson, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (resolve_cmd->parsed()) return cmd_resolve(build_spec(fl));
        if (tor_cmd->parsed()) return cmd_tor(build_spec(fl));
        if (ext_cmd->parsed()) return cmd_ext(build_spec(fl));
        if (gk_cmd->parsed()) return cmd_gk(build_spec(fl));
        if (verify_cmd->parsed()) return cmd_verify(stretch, vjson);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind) {
            case ErrorKind::Parse:
                return 2;
            case ErrorKind::Internal:
                return 4;
            default:
                return 3;
        }
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 2;
}
