// tfq — transforms, window tooling, pipeline simulation, and the built-in
// verification battery, over finite abelian groups.
//
// Every command is deterministic: the same inputs and flags produce
// byte-identical output (fixed 17-significant-digit formatting).  Output
// goes to --out when given, stdout otherwise.

#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "tfq/io.hpp"
#include "tfq/quantum.hpp"
#include "tfq/transforms.hpp"
#include "tfq/verify.hpp"
#include "tfq/windows.hpp"

using namespace tfq;

namespace {

// 0 success, 1 verification failure, 2 parse, 3 dimension mismatch,
// 4 invalid window, 5 unsupported subgroup.
int exit_code_for(ErrorCode c) {
    switch (c) {
        case ErrorCode::parse_error:
        case ErrorCode::invalid_group:
        case ErrorCode::invalid_subgroup: return 2;
        case ErrorCode::domain_mismatch:
        case ErrorCode::shape_error: return 3;
        case ErrorCode::invalid_window: return 4;
        case ErrorCode::unsupported_subgroup: return 5;
    }
    return 2;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        write_text_file(out_path, content);
}

void check_group_flag(const std::string& flag, const FiniteAbelianGroup& from_file) {
    if (flag.empty()) return;
    if (parse_group_spec(flag) != from_file)
        fail(ErrorCode::domain_mismatch,
             "--group " + flag + " does not match the file's group " +
                 from_file.spec_string());
}

void check_same_subgroup(const Subgroup& a, const Subgroup& b, const std::string& what) {
    if (a.parent() != b.parent() || a.elements() != b.elements())
        fail(ErrorCode::domain_mismatch, what);
}

std::string coords_string(const Coords& c) {
    std::string s = "(";
    for (size_t j = 0; j < c.size(); ++j) {
        if (j) s += ",";
        s += std::to_string(c[j]);
    }
    return s + ")";
}

// Resolve the subgroup for a window: the --subgroup flag and the file's own
// subgroup must agree when both are present; one of them must exist.
Subgroup window_subgroup(const WindowFile& wf, const std::string& flag) {
    if (!flag.empty()) {
        Subgroup s = parse_subgroup_spec(wf.group, flag);
        if (wf.has_subgroup)
            check_same_subgroup(s, wf.subgroup,
                                "--subgroup disagrees with the window file's subgroup");
        return s;
    }
    if (wf.has_subgroup) return wf.subgroup;
    fail(ErrorCode::invalid_subgroup,
         "window file names no subgroup; pass --subgroup");
}

// Loads and validates a window for analysis/synthesis/simulation use.
Window load_window(const std::string& path, const std::string& subgroup_flag, double tol) {
    WindowFile wf = window_file_from_json(read_text_file(path));
    Subgroup sub = window_subgroup(wf, subgroup_flag);
    Window w = wf.is_phases ? window_from_phases(wf.theta, sub, tol)
                            : check_window(wf.signal, sub, tol);
    if (!w.validated())
        fail(ErrorCode::invalid_window,
             "window fails the orthonormality criterion, max deviation " +
                 format_number(w.max_deviation));
    return w;
}

std::string group_info_text(const FiniteAbelianGroup& g, const Subgroup* sub) {
    std::string out = "group " + g.spec_string() + "\norder " + std::to_string(g.order()) + "\n";
    if (!sub) return out;
    const CosetTables tables = coset_tables(*sub);
    out += "subgroup " + sub->spec_string() + "\n";
    out += std::string("kind ") + (sub->aligned() ? "aligned" : "generated") + "\n";
    out += "subgroup-order " + std::to_string(sub->order()) + "\n";
    auto list = [&](const char* label, const std::vector<int64_t>& flats) {
        out += label;
        for (int64_t f : flats) out += " " + coords_string(g.coords_of(f));
        out += "\n";
    };
    list("elements", sub->elements());
    list("annihilator", tables.ann.elements());
    list("t1", tables.t1);
    list("t2", tables.t2);
    if (sub->aligned()) {
        IsomorphismPhi phi = make_phi(g, *sub);
        out += "bstar-labels " + phi.bstar_labels().spec_string() + "\n";
        out += "phi-quot-to-ann";
        for (int64_t x : tables.t1)
            out += " " + coords_string(g.coords_of(x)) + "->" +
                   coords_string(phi.quot_to_ann(g.element(x)).coords());
        out += "\nphi-b-to-bstar";
        for (int64_t b : sub->elements())
            out += " " + coords_string(g.coords_of(b)) + "->" +
                   coords_string(phi.b_to_bstar(g.element(b)).coords());
        out += "\n";
    } else {
        out += "phi unsupported (generated subgroup)\n";
    }
    return out;
}

std::string group_info_json(const FiniteAbelianGroup& g, const Subgroup* sub) {
    std::string out = "{\n  \"group\": [";
    for (size_t j = 0; j < g.moduli().size(); ++j) {
        if (j) out += ", ";
        out += std::to_string(g.moduli()[j]);
    }
    out += "],\n  \"order\": " + std::to_string(g.order());
    if (sub) {
        const CosetTables tables = coset_tables(*sub);
        auto coord_list = [&](const std::vector<int64_t>& flats) {
            std::string s = "[";
            for (size_t i = 0; i < flats.size(); ++i) {
                if (i) s += ", ";
                Coords c = g.coords_of(flats[i]);
                s += "[";
                for (size_t j = 0; j < c.size(); ++j) {
                    if (j) s += ", ";
                    s += std::to_string(c[j]);
                }
                s += "]";
            }
            return s + "]";
        };
        out += ",\n  \"subgroup\": \"" + sub->spec_string() + "\"";
        out += std::string(",\n  \"kind\": \"") + (sub->aligned() ? "aligned" : "generated") +
               "\"";
        out += ",\n  \"subgroup_order\": " + std::to_string(sub->order());
        out += ",\n  \"elements\": " + coord_list(sub->elements());
        out += ",\n  \"annihilator\": " + coord_list(tables.ann.elements());
        out += ",\n  \"t1\": " + coord_list(tables.t1);
        out += ",\n  \"t2\": " + coord_list(tables.t2);
        if (sub->aligned()) {
            IsomorphismPhi phi = make_phi(g, *sub);
            std::vector<int64_t> images;
            for (int64_t x : tables.t1) images.push_back(phi.quot_to_ann(g.element(x)).flat());
            out += ",\n  \"phi\": {\n    \"quotients\": [";
            for (size_t j = 0; j < phi.quotients().size(); ++j) {
                if (j) out += ", ";
                out += std::to_string(phi.quotients()[j]);
            }
            out += "],\n    \"quot_to_ann\": " + coord_list(images);
            images.clear();
            for (int64_t b : sub->elements())
                images.push_back(phi.b_to_bstar(g.element(b)).flat());
            out += ",\n    \"b_to_bstar_labels\": " + coord_list(images) + "\n  }";
        }
    }
    out += "\n}\n";
    return out;
}

std::string state_to_json(const Pipeline& p, const Subgroup& sub,
                          const std::vector<cplx>& state) {
    std::string out = "{\n  \"group\": [";
    const FiniteAbelianGroup& g = sub.parent();
    for (size_t j = 0; j < g.moduli().size(); ++j) {
        if (j) out += ", ";
        out += std::to_string(g.moduli()[j]);
    }
    out += "],\n  \"subgroup\": \"" + sub.spec_string() + "\",\n  \"registers\": [";
    const RegisterLayout& layout = p.layouts.back();
    for (size_t r = 0; r < layout.registers.size(); ++r) {
        if (r) out += ", ";
        out += "{\"kind\": \"" + register_kind_name(layout.registers[r].kind) +
               "\", \"dim\": " + std::to_string(layout.registers[r].dim) + "}";
    }
    out += "],\n  \"values\": [\n";
    for (size_t i = 0; i < state.size(); ++i) {
        out += "    [" + format_number(state[i].real()) + ", " +
               format_number(state[i].imag()) + "]";
        out += (i + 1 < state.size()) ? ",\n" : "\n";
    }
    out += "  ]\n}\n";
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"time-frequency transforms over finite abelian groups"};
    app.require_subcommand(1);
    int rc = 0;

    // --- group info ---
    std::string gi_spec_pos, gi_group, gi_subgroup, gi_out;
    CLI::App* group_cmd = app.add_subcommand("group", "group and subgroup structure");
    group_cmd->require_subcommand(1);
    CLI::App* info = group_cmd->add_subcommand("info", "print order, cosets and phi tables");
    info->add_option("spec", gi_spec_pos, "group spec, e.g. Z2xZ4");
    info->add_option("--group", gi_group, "group spec (alternative to the positional)");
    info->add_option("--subgroup", gi_subgroup, "subgroup spec, div:... or gen:(...)");
    info->add_option("--out", gi_out, "write a JSON report here");
    info->callback([&] {
        if (gi_spec_pos.empty() && gi_group.empty())
            fail(ErrorCode::invalid_group, "no group spec given");
        if (!gi_spec_pos.empty() && !gi_group.empty() && gi_spec_pos != gi_group)
            fail(ErrorCode::invalid_group, "positional spec and --group disagree");
        FiniteAbelianGroup g = parse_group_spec(gi_spec_pos.empty() ? gi_group : gi_spec_pos);
        Subgroup sub;
        bool have_sub = !gi_subgroup.empty();
        if (have_sub) sub = parse_subgroup_spec(g, gi_subgroup);
        std::cout << group_info_text(g, have_sub ? &sub : nullptr);
        if (!gi_out.empty())
            write_text_file(gi_out, group_info_json(g, have_sub ? &sub : nullptr));
    });

    // --- fourier ---
    std::string f_in, f_out, f_group;
    bool f_fast = false;
    CLI::App* fourier_cmd = app.add_subcommand("fourier", "unitary Fourier transform");
    fourier_cmd->add_option("--in", f_in, "input signal file")->required();
    fourier_cmd->add_option("--out", f_out, "output file (stdout when omitted)");
    fourier_cmd->add_option("--group", f_group, "cross-check against the file's group");
    fourier_cmd->add_flag("--fast", f_fast, "mixed-radix fast path");
    fourier_cmd->callback([&] {
        Signal f = signal_from_json(read_text_file(f_in));
        check_group_flag(f_group, f.group);
        emit(f_out, signal_to_json(f_fast ? fourier_fast(f) : fourier(f)));
    });

    // --- zak ---
    std::string z_in, z_out, z_group, z_subgroup, z_domain = "T";
    bool z_fast = false;
    CLI::App* zak_cmd = app.add_subcommand("zak", "Zak transform with respect to a subgroup");
    zak_cmd->add_option("--in", z_in, "input signal file")->required();
    zak_cmd->add_option("--out", z_out, "output file (stdout when omitted)");
    zak_cmd->add_option("--group", z_group, "cross-check against the file's group");
    zak_cmd->add_option("--subgroup", z_subgroup, "subgroup spec")->required();
    zak_cmd->add_option("--domain", z_domain, "output domain: T (default) or full");
    zak_cmd->add_flag("--fast", z_fast, "per-coset mixed-radix path");
    zak_cmd->callback([&] {
        Signal f = signal_from_json(read_text_file(z_in));
        check_group_flag(z_group, f.group);
        Subgroup sub = parse_subgroup_spec(f.group, z_subgroup);
        if (z_domain != "T" && z_domain != "full")
            fail(ErrorCode::parse_error, "--domain must be T or full");
        CosetTables tables = coset_tables(sub);
        ZakArray z;
        if (z_fast) {
            z = zak_fast(f, sub);
            if (z_domain == "full") z = extend_from_t(z, tables);
        } else {
            z = zak_direct(f, sub);
            if (z_domain == "T") z = restrict_to_t(z, tables);
        }
        emit(z_out, zak_to_json(z));
    });

    // --- izak ---
    std::string iz_in, iz_out, iz_group, iz_subgroup;
    bool iz_fast = false;
    CLI::App* izak_cmd = app.add_subcommand("izak", "inverse Zak transform");
    izak_cmd->add_option("--in", iz_in, "input Zak file")->required();
    izak_cmd->add_option("--out", iz_out, "output file (stdout when omitted)");
    izak_cmd->add_option("--group", iz_group, "cross-check against the file's group");
    izak_cmd->add_option("--subgroup", iz_subgroup, "cross-check against the file's subgroup");
    izak_cmd->add_flag("--fast", iz_fast, "accepted for symmetry; same averaging path");
    izak_cmd->callback([&] {
        (void)iz_fast;
        ZakArray z = zak_from_json(read_text_file(iz_in));
        check_group_flag(iz_group, z.subgroup.parent());
        if (!iz_subgroup.empty())
            check_same_subgroup(parse_subgroup_spec(z.subgroup.parent(), iz_subgroup),
                                z.subgroup, "--subgroup disagrees with the file's subgroup");
        emit(iz_out, signal_to_json(inverse_zak(z)));
    });

    // --- wht ---
    std::string w_in, w_out, w_group, w_subgroup, w_window;
    double w_tol = 1e-8;
    CLI::App* wht_cmd = app.add_subcommand("wht", "Weyl-Heisenberg analysis coefficients");
    wht_cmd->add_option("--in", w_in, "input signal file")->required();
    wht_cmd->add_option("--out", w_out, "output file (stdout when omitted)");
    wht_cmd->add_option("--group", w_group, "cross-check against the file's group");
    wht_cmd->add_option("--subgroup", w_subgroup, "subgroup spec (if the window file has none)");
    wht_cmd->add_option("--window", w_window, "window file")->required();
    wht_cmd->add_option("--tol", w_tol, "window validation tolerance");
    wht_cmd->callback([&] {
        Signal f = signal_from_json(read_text_file(w_in));
        check_group_flag(w_group, f.group);
        Window win = load_window(w_window, w_subgroup, w_tol);
        if (win.g.group != f.group)
            fail(ErrorCode::domain_mismatch, "window and signal live on different groups");
        emit(w_out, alpha_to_json(wh_analyze(f, win)));
    });

    // --- iwht ---
    std::string iw_in, iw_out, iw_group, iw_subgroup, iw_window;
    double iw_tol = 1e-8;
    CLI::App* iwht_cmd = app.add_subcommand("iwht", "Weyl-Heisenberg synthesis");
    iwht_cmd->add_option("--in", iw_in, "input coefficient file")->required();
    iwht_cmd->add_option("--out", iw_out, "output file (stdout when omitted)");
    iwht_cmd->add_option("--group", iw_group, "cross-check against the file's group");
    iwht_cmd->add_option("--subgroup", iw_subgroup, "subgroup spec (if the window file has none)");
    iwht_cmd->add_option("--window", iw_window, "window file")->required();
    iwht_cmd->add_option("--tol", iw_tol, "window validation tolerance");
    iwht_cmd->callback([&] {
        WHCoefficients alpha = alpha_from_json(read_text_file(iw_in));
        check_group_flag(iw_group, alpha.subgroup.parent());
        Window win = load_window(iw_window, iw_subgroup, iw_tol);
        check_same_subgroup(win.lattice.subgroup, alpha.subgroup,
                            "window and coefficient file disagree on the subgroup");
        emit(iw_out, signal_to_json(wh_synthesize(alpha, win)));
    });

    // --- window check / make ---
    std::string wc_file, wc_subgroup;
    double wc_tol = 1e-8;
    CLI::App* window_cmd = app.add_subcommand("window", "window validation and construction");
    window_cmd->require_subcommand(1);
    CLI::App* wcheck = window_cmd->add_subcommand("check", "test the orthonormality criterion");
    wcheck->add_option("file", wc_file, "window file")->required();
    wcheck->add_option("--subgroup", wc_subgroup, "subgroup spec (if the file has none)");
    wcheck->add_option("--tol", wc_tol, "criterion tolerance");
    wcheck->callback([&] {
        WindowFile wf = window_file_from_json(read_text_file(wc_file));
        Subgroup sub = window_subgroup(wf, wc_subgroup);
        Window w = wf.is_phases ? window_from_phases(wf.theta, sub, wc_tol)
                                : check_window(wf.signal, sub, wc_tol);
        std::cout << (w.validated() ? "pass" : "fail")
                  << " max_deviation=" << format_number(w.max_deviation)
                  << " tolerance=" << format_number(w.tol) << "\n";
        rc = w.validated() ? 0 : 4;
    });

    std::string wm_file, wm_out;
    double wm_tol = 1e-8;
    CLI::App* wmake = window_cmd->add_subcommand("make", "build a window from a phase table");
    wmake->add_option("file", wm_file, "phase file")->required();
    wmake->add_option("--out", wm_out, "output window file (stdout when omitted)");
    wmake->add_option("--tol", wm_tol, "validation tolerance");
    wmake->callback([&] {
        WindowFile wf = window_file_from_json(read_text_file(wm_file));
        if (!wf.is_phases)
            fail(ErrorCode::parse_error, "window make expects a phases file");
        Window w = window_from_phases(wf.theta, wf.subgroup, wm_tol);
        emit(wm_out, window_signal_to_json(w.g, wf.subgroup.spec_string()));
    });

    // --- sim qzt / qwht ---
    CLI::App* sim_cmd = app.add_subcommand("sim", "state-vector pipeline simulation");
    sim_cmd->require_subcommand(1);

    std::string sq_group, sq_subgroup, sq_in, sq_out;
    bool sq_matrix = false, sq_state = false;
    CLI::App* sim_qzt = sim_cmd->add_subcommand("qzt", "coset permutation + subgroup Fourier");
    sim_qzt->add_option("--group", sq_group, "group spec")->required();
    sim_qzt->add_option("--subgroup", sq_subgroup, "subgroup spec")->required();
    sim_qzt->add_option("--in", sq_in, "input signal file (with --state)");
    sim_qzt->add_option("--out", sq_out, "output file (stdout when omitted)");
    sim_qzt->add_flag("--matrix", sq_matrix, "dump stage descriptors and the composed matrix");
    sim_qzt->add_flag("--state", sq_state, "apply the pipeline to the input signal");
    sim_qzt->callback([&] {
        if (sq_matrix == sq_state)
            fail(ErrorCode::parse_error, "pass exactly one of --matrix or --state");
        FiniteAbelianGroup g = parse_group_spec(sq_group);
        Subgroup sub = parse_subgroup_spec(g, sq_subgroup);
        Pipeline p = qzt_pipeline(coset_tables(sub));
        if (sq_matrix) {
            emit(sq_out, pipeline_to_json(p, true));
            return;
        }
        if (sq_in.empty()) fail(ErrorCode::parse_error, "--state needs --in");
        Signal f = signal_from_json(read_text_file(sq_in));
        if (f.group != g)
            fail(ErrorCode::domain_mismatch, "input signal lives on a different group");
        emit(sq_out, state_to_json(p, sub, p.apply(f.values)));
    });

    std::string sw_group, sw_subgroup, sw_in, sw_out, sw_window;
    double sw_tol = 1e-8;
    bool sw_matrix = false, sw_state = false;
    CLI::App* sim_qwht = sim_cmd->add_subcommand("qwht", "full Weyl-Heisenberg pipeline");
    sim_qwht->add_option("--group", sw_group, "cross-check against the window's group");
    sim_qwht->add_option("--subgroup", sw_subgroup, "subgroup spec (if the window file has none)");
    sim_qwht->add_option("--window", sw_window, "window file")->required();
    sim_qwht->add_option("--in", sw_in, "input signal file (with --state)");
    sim_qwht->add_option("--out", sw_out, "output file (stdout when omitted)");
    sim_qwht->add_option("--tol", sw_tol, "window validation tolerance");
    sim_qwht->add_flag("--matrix", sw_matrix, "dump stage descriptors and the composed matrix");
    sim_qwht->add_flag("--state", sw_state, "apply the pipeline to the input signal");
    sim_qwht->callback([&] {
        if (sw_matrix == sw_state)
            fail(ErrorCode::parse_error, "pass exactly one of --matrix or --state");
        Window w = load_window(sw_window, sw_subgroup, sw_tol);
        check_group_flag(sw_group, w.g.group);
        IsomorphismPhi phi = make_phi(w.g.group, w.lattice.subgroup);
        Pipeline p = qwht_pipeline(w, phi);
        if (sw_matrix) {
            emit(sw_out, pipeline_to_json(p, true));
            return;
        }
        if (sw_in.empty()) fail(ErrorCode::parse_error, "--state needs --in");
        Signal f = signal_from_json(read_text_file(sw_in));
        if (f.group != w.g.group)
            fail(ErrorCode::domain_mismatch, "input signal lives on a different group");
        emit(sw_out, state_to_json(p, w.lattice.subgroup, p.apply(f.values)));
    });

    // --- verify ---
    std::string v_suite = "all", v_out;
    double v_tol = 0.0;
    CLI::App* verify_cmd = app.add_subcommand("verify", "run the built-in property battery");
    verify_cmd->add_option("--suite", v_suite, "all, zak, window, fgp, qzt or qwht");
    verify_cmd->add_option("--tol", v_tol, "override every check tolerance");
    verify_cmd->add_option("--out", v_out, "write the JSON report here");
    verify_cmd->callback([&] {
        VerifyConfig cfg;
        cfg.tol_override = v_tol;
        SuiteReport report = run_suites(v_suite, cfg);
        std::string json = report_to_json(report);
        if (v_out.empty()) {
            std::cout << json;
        } else {
            write_text_file(v_out, json);
            int failed = 0;
            for (const CheckResult& c : report.checks)
                if (!c.pass) ++failed;
            std::cout << "suite " << report.suite << ": " << report.checks.size()
                      << " checks, " << failed
                      << " failed, max deviation " << format_number(report.max_deviation)
                      << "\n";
        }
        rc = report.all_pass ? 0 : 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    }
    return rc;
}
