#include "tfq/verify.hpp"

#include <algorithm>
#include <cmath>

#include "tfq/io.hpp"
#include "tfq/quantum.hpp"
#include "tfq/rng.hpp"
#include "tfq/windows.hpp"

namespace tfq {

std::vector<FiniteAbelianGroup> battery_groups() {
    static const std::vector<Coords> moduli = {
        {4}, {6}, {8}, {12}, {2, 4}, {2, 2, 3}, {3, 9},
    };
    std::vector<FiniteAbelianGroup> out;
    for (const Coords& m : moduli) out.emplace_back(m);
    return out;
}

std::vector<Subgroup> all_aligned_subgroups(const FiniteAbelianGroup& g) {
    std::vector<Coords> divisor_lists;
    for (int64_t n : g.moduli()) {
        Coords divs;
        for (int64_t d = 1; d <= n; ++d)
            if (n % d == 0) divs.push_back(d);
        divisor_lists.push_back(divs);
    }
    std::vector<Subgroup> out;
    Coords pick(g.factors(), 0);  // odometer over divisor choices
    while (true) {
        Coords divisors;
        for (size_t j = 0; j < g.factors(); ++j)
            divisors.push_back(divisor_lists[j][static_cast<size_t>(pick[j])]);
        out.push_back(Subgroup::from_divisors(g, divisors));
        size_t j = g.factors();
        while (j > 0) {
            --j;
            if (++pick[j] < static_cast<int64_t>(divisor_lists[j].size())) break;
            pick[j] = 0;
            if (j == 0) return out;
        }
    }
}

std::vector<Subgroup> sample_generated_subgroups(const FiniteAbelianGroup& g, int count) {
    Rng rng("generated-subgroups/" + g.spec_string());
    std::vector<Subgroup> out;
    std::vector<std::vector<int64_t>> seen;
    // A couple hundred draws always suffice for the battery groups, all of
    // which have well over `count` distinct subgroups.
    for (int attempt = 0; attempt < 256 && static_cast<int>(out.size()) < count; ++attempt) {
        int ngens = 1 + static_cast<int>(rng.uniform_int(2));
        std::vector<GroupElement> gens;
        for (int i = 0; i < ngens; ++i) {
            Coords c;
            for (int64_t n : g.moduli()) c.push_back(rng.uniform_int(n));
            gens.push_back(g.make_element(c));
        }
        Subgroup s = Subgroup::from_generators(g, gens);
        if (std::find(seen.begin(), seen.end(), s.elements()) != seen.end()) continue;
        seen.push_back(s.elements());
        out.push_back(std::move(s));
    }
    return out;
}

Signal broken_window_signal(const Subgroup& sub, int index) {
    const FiniteAbelianGroup& g = sub.parent();
    CosetTables tables = coset_tables(sub);
    const int64_t N = g.order();
    std::vector<double> theta = random_phases(
        N, "broken-window/" + g.spec_string() + "/" + sub.spec_string() + "/" +
               std::to_string(index));
    const double c = std::sqrt(static_cast<double>(sub.order()) / static_cast<double>(N));

    ZakArray z;
    z.subgroup = sub;
    z.domain = ZakDomain::restricted_t;
    z.values.resize(static_cast<size_t>(N));
    for (int64_t i = 0; i < N; ++i)
        z.values[static_cast<size_t>(i)] = std::polar(c, theta[static_cast<size_t>(i)]);
    z.values[static_cast<size_t>(index % N)] = 0.0;  // the defect

    Signal f = inverse_zak(z, tables);
    double n = f.norm();  // sqrt(1 - 1/N), never zero for N > 1
    for (cplx& v : f.values) v /= n;
    return f;
}

bool suite_name_valid(const std::string& suite) {
    return suite == "all" || suite == "zak" || suite == "window" || suite == "fgp" ||
           suite == "qzt" || suite == "qwht";
}

namespace {

// row a*, column a: (1/sqrt|A|) conj(chi_{a*}(a))
CMatrix unitary_fourier_matrix(const FiniteAbelianGroup& g) {
    const int64_t N = g.order();
    const double scale = 1.0 / std::sqrt(static_cast<double>(N));
    CMatrix m = CMatrix::zeros(N);
    for (int64_t r = 0; r < N; ++r) {
        DualElement astar = g.dual_element(r);
        for (int64_t c = 0; c < N; ++c)
            m.at(r, c) = scale * std::conj(char_eval(astar, g.element(c)));
    }
    return m;
}

struct SuiteRunner {
    const VerifyConfig& cfg;
    SuiteReport& report;

    double tol(double def) const { return cfg.tol_override > 0.0 ? cfg.tol_override : def; }

    void add(const std::string& suite, const std::string& name, double dev, double def_tol,
             std::string note = "") {
        CheckResult r;
        r.suite = suite;
        r.name = name;
        r.deviation = dev;
        r.tolerance = tol(def_tol);
        r.pass = dev <= r.tolerance;
        r.note = std::move(note);
        report.all_pass = report.all_pass && r.pass;
        report.max_deviation = std::max(report.max_deviation, dev);
        report.checks.push_back(std::move(r));
    }

    std::string pair_tag(const Subgroup& sub) const {
        return sub.parent().spec_string() + "/" + sub.spec_string();
    }

    // ---- zak ----

    void zak_group_checks(const FiniteAbelianGroup& g) {
        double dev_fast = 0.0, dev_round = 0.0;
        for (int i = 0; i < cfg.random_signals; ++i) {
            Signal f = random_unit_signal(
                g, "verify/fourier/" + g.spec_string() + "/" + std::to_string(i));
            Signal slow = fourier(f);
            Signal fast = fourier_fast(f);
            dev_fast = std::max(dev_fast, max_abs_diff(slow.values, fast.values));
            Signal back = inverse_fourier(slow);
            dev_round = std::max(dev_round, max_abs_diff(back.values, f.values));
        }
        add("zak", "fourier-fast-vs-direct/" + g.spec_string(), dev_fast, 1e-10);
        add("zak", "fourier-round-trip/" + g.spec_string(), dev_round, 1e-12);
    }

    void zak_pair_checks(const Subgroup& sub) {
        const FiniteAbelianGroup& g = sub.parent();
        CosetTables tables = coset_tables(sub);
        const int64_t N = g.order();
        const std::string tag = pair_tag(sub);

        // Impulse at a0: F(a, a*) = chi_{a*}(a - a0) when a - a0 lies in B,
        // zero otherwise.
        double dev_delta = 0.0;
        for (int64_t a0 = 0; a0 < N; ++a0) {
            ZakArray z = zak_direct(Signal::basis(g, a0), sub);
            for (int64_t a = 0; a < N; ++a) {
                int64_t diff = g.sub_index(a, a0);
                for (int64_t as = 0; as < N; ++as) {
                    cplx want = sub.contains_index(diff)
                                    ? char_eval(g.dual_element(as), g.element(diff))
                                    : cplx{0.0, 0.0};
                    dev_delta = std::max(
                        dev_delta, std::abs(z.values[static_cast<size_t>(a * N + as)] - want));
                }
            }
        }
        add("zak", "delta-closed-form/" + tag, dev_delta, 1e-12);

        double dev_round_full = 0.0, dev_round_fast = 0.0, dev_fast = 0.0, dev_ext = 0.0;
        for (int i = 0; i < cfg.random_signals; ++i) {
            Signal f = random_unit_signal(g, "verify/zak/" + tag + "/" + std::to_string(i));
            ZakArray full = zak_direct(f, sub);
            ZakArray fast = zak_fast(f, sub);
            dev_fast = std::max(
                dev_fast, max_abs_diff(fast.values, restrict_to_t(full, tables).values));
            dev_round_full =
                std::max(dev_round_full, max_abs_diff(inverse_zak(full, tables).values, f.values));
            dev_round_fast =
                std::max(dev_round_fast, max_abs_diff(inverse_zak(fast, tables).values, f.values));
            dev_ext = std::max(
                dev_ext,
                max_abs_diff(extend_from_t(restrict_to_t(full, tables), tables).values,
                             full.values));
        }
        add("zak", "round-trip-direct/" + tag, dev_round_full, 1e-12);
        add("zak", "round-trip-fast/" + tag, dev_round_fast, 1e-12);
        add("zak", "fast-vs-direct/" + tag, dev_fast, 1e-10);
        add("zak", "extend-restrict/" + tag, dev_ext, 1e-12);
    }

    // ---- window ----

    void window_pair_checks(const Subgroup& sub) {
        const FiniteAbelianGroup& g = sub.parent();
        const int64_t N = g.order();
        const std::string tag = pair_tag(sub);

        double dev_gram = 0.0, dev_phase = 0.0;
        int disagreements = 0;
        const double gate = 1e-8;

        for (int i = 0; i < cfg.random_windows; ++i) {
            std::vector<double> theta =
                random_phases(N, "verify/window/" + tag + "/" + std::to_string(i));
            Window w = window_from_phases(theta, sub, gate);
            std::vector<cplx> gram = gram_matrix(w);
            double gd = 0.0;
            for (int64_t r = 0; r < N; ++r)
                for (int64_t c = 0; c < N; ++c) {
                    cplx want = (r == c) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
                    gd = std::max(gd, std::abs(gram[static_cast<size_t>(r * N + c)] - want));
                }
            dev_gram = std::max(dev_gram, gd);
            if (w.validated() != (gd <= gate)) ++disagreements;

            // Construction target: the restricted table is c e^{i theta}.
            const double c = std::sqrt(static_cast<double>(sub.order()) /
                                       static_cast<double>(N));
            for (int64_t p = 0; p < N; ++p)
                dev_phase = std::max(
                    dev_phase,
                    std::abs(w.zak_g.values[static_cast<size_t>(p)] -
                             std::polar(c, theta[static_cast<size_t>(p)])));
        }
        add("window", "random-window-gram/" + tag, dev_gram, gate);
        add("window", "phase-round-trip/" + tag, dev_phase, 1e-12);

        int broken_validated = 0;
        for (int i = 0; i < cfg.broken_windows; ++i) {
            Signal b = broken_window_signal(sub, i);
            Window w = check_window(b, sub, gate);
            if (w.validated()) ++broken_validated;
            std::vector<cplx> gram = gram_matrix(w);
            double gd = 0.0;
            for (int64_t r = 0; r < N; ++r)
                for (int64_t c = 0; c < N; ++c) {
                    cplx want = (r == c) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
                    gd = std::max(gd, std::abs(gram[static_cast<size_t>(r * N + c)] - want));
                }
            if (w.validated() != (gd <= gate)) ++disagreements;
        }
        add("window", "broken-window-rejected/" + tag, broken_validated, 0.0);
        add("window", "criterion-gram-agreement/" + tag, disagreements, 0.0);

        // Analysis/synthesis round trip and Parseval under one fixed window.
        Window w = window_from_phases(random_phases(N, "verify/window-rt/" + tag), sub, gate);
        double dev_rt = 0.0, dev_parseval = 0.0;
        for (int i = 0; i < cfg.random_signals; ++i) {
            Signal f = random_unit_signal(g, "verify/wh-rt/" + tag + "/" + std::to_string(i));
            WHCoefficients alpha = wh_analyze(f, w);
            Signal back = wh_synthesize(alpha, w);
            dev_rt = std::max(dev_rt, max_abs_diff(back.values, f.values));
            double sum = 0.0;
            for (const cplx& v : alpha.values) sum += std::norm(v);
            double nf = f.norm();
            dev_parseval = std::max(dev_parseval, std::abs(sum - nf * nf));
        }
        add("window", "analysis-synthesis-round-trip/" + tag, dev_rt, 1e-10);
        add("window", "parseval/" + tag, dev_parseval, 1e-10);
    }

    // ---- fgp ----

    void fgp_pair_checks(const Subgroup& sub) {
        const FiniteAbelianGroup& g = sub.parent();
        const int64_t N = g.order();
        const std::string tag = pair_tag(sub);

        double dev_fgp = 0.0;
        for (int i = 0; i < cfg.fgp_pairs; ++i) {
            Window w = window_from_phases(
                random_phases(N, "verify/fgp-window/" + tag + "/" + std::to_string(i)), sub);
            Signal f = random_unit_signal(g, "verify/fgp-signal/" + tag + "/" + std::to_string(i));
            dev_fgp = std::max(dev_fgp, verify_fgp(f, w));
        }
        add("fgp", "f-equals-gp/" + tag, dev_fgp, 1e-10);

        // P is Delta-periodic over the full A x A* table.
        Window w = window_from_phases(random_phases(N, "verify/fgp-periodic/" + tag), sub);
        Signal f = random_unit_signal(g, "verify/fgp-periodic-signal/" + tag);
        PeriodicCorrelation p = periodic_correlation(wh_analyze(f, w), w.lattice);
        double dev_per = 0.0;
        for (const auto& [b, bs] : w.lattice.delta)
            for (int64_t a = 0; a < N; ++a) {
                int64_t ashift = g.add_index(a, b);
                for (int64_t as = 0; as < N; ++as) {
                    int64_t asshift = g.add_index(as, bs);
                    dev_per = std::max(
                        dev_per,
                        std::abs(p.values[static_cast<size_t>(ashift * N + asshift)] -
                                 p.values[static_cast<size_t>(a * N + as)]));
                }
            }
        add("fgp", "correlation-periodic/" + tag, dev_per, 1e-10);
    }

    // ---- qzt ----

    void qzt_group_checks(const FiniteAbelianGroup& g) {
        Coords trivial, full;
        for (int64_t n : g.moduli()) {
            trivial.push_back(n);
            full.push_back(1);
        }
        {
            CosetTables t = coset_tables(Subgroup::from_divisors(g, trivial));
            CMatrix m = qzt_pipeline(t).compose_matrix();
            add("qzt", "endpoint-trivial-subgroup/" + g.spec_string(),
                max_abs_diff(m.a, CMatrix::identity(g.order()).a), 1e-12);
        }
        {
            CosetTables t = coset_tables(Subgroup::from_divisors(g, full));
            CMatrix m = qzt_pipeline(t).compose_matrix();
            add("qzt", "endpoint-whole-group/" + g.spec_string(),
                max_abs_diff(m.a, unitary_fourier_matrix(g).a), 1e-10);
        }
    }

    void qzt_pair_checks(const Subgroup& sub) {
        const std::string tag = pair_tag(sub);
        CosetTables tables = coset_tables(sub);
        Pipeline p = qzt_pipeline(tables);
        CMatrix direct = direct_qzt_matrix(tables);

        EquivalenceReport eq = verify_equivalence(p, direct, tol(1e-10), qzt_row_relabelings(tables));
        std::string note;
        if (!eq.pass && eq.best_name != "canonical")
            note = "best relabeling " + eq.best_name + " at " + format_number(eq.best_dev);
        add("qzt", "pipeline-vs-direct/" + tag, eq.max_dev, 1e-10, note);

        double stage_dev = 0.0;
        for (const Stage& s : p.stages)
            stage_dev = std::max(stage_dev, s.to_matrix().unitarity_defect());
        add("qzt", "stage-unitarity/" + tag, stage_dev, 1e-10);
        add("qzt", "pipeline-unitarity/" + tag, p.compose_matrix().unitarity_defect(), 1e-10);

        Signal f = random_unit_signal(sub.parent(), "verify/qzt-apply/" + tag);
        std::vector<cplx> via_stages = p.apply(f.values);
        std::vector<cplx> via_matrix = p.compose_matrix().apply(f.values);
        add("qzt", "apply-matches-matrix/" + tag, max_abs_diff(via_stages, via_matrix), 1e-12);
    }

    // ---- qwht ----

    void qwht_group_checks(const FiniteAbelianGroup& g) {
        // Constant window over the trivial subgroup: the translate system is
        // the normalized character basis, so both the direct operator and
        // the pipeline must reproduce the Fourier matrix.
        Coords trivial;
        for (int64_t n : g.moduli()) trivial.push_back(n);
        Subgroup sub = Subgroup::from_divisors(g, trivial);
        Signal c = Signal::zeros(g);
        const double amp = 1.0 / std::sqrt(static_cast<double>(g.order()));
        for (cplx& v : c.values) v = amp;
        Window w = check_window(c, sub);
        CMatrix want = unitary_fourier_matrix(g);
        add("qwht", "fourier-endpoint-direct/" + g.spec_string(),
            max_abs_diff(direct_qwht_matrix(w).a, want.a), 1e-10);
        Pipeline p = qwht_pipeline(w, make_phi(g, sub));
        add("qwht", "fourier-endpoint-pipeline/" + g.spec_string(),
            max_abs_diff(p.compose_matrix().a, want.a), 1e-10);
    }

    void qwht_pair_checks(const Subgroup& sub) {
        const FiniteAbelianGroup& g = sub.parent();
        const int64_t N = g.order();
        const std::string tag = pair_tag(sub);
        IsomorphismPhi phi = make_phi(g, sub);
        CosetTables tables = coset_tables(sub);

        double dev_eq = 0.0, dev_stage = 0.0, dev_pipe = 0.0, dev_alpha = 0.0;
        std::string note;
        for (int i = 0; i < cfg.qwht_windows; ++i) {
            Window w = window_from_phases(
                random_phases(N, "verify/qwht/" + tag + "/" + std::to_string(i)), sub);
            Pipeline p = qwht_pipeline(w, phi);
            CMatrix direct = direct_qwht_matrix(w);
            EquivalenceReport eq =
                verify_equivalence(p, direct, tol(1e-10), qwht_row_relabelings(tables));
            dev_eq = std::max(dev_eq, eq.max_dev);
            if (!eq.pass && eq.best_name != "canonical" && note.empty())
                note = "best relabeling " + eq.best_name + " at " + format_number(eq.best_dev);
            for (const Stage& s : p.stages)
                dev_stage = std::max(dev_stage, s.to_matrix().unitarity_defect());
            dev_pipe = std::max(dev_pipe, p.compose_matrix().unitarity_defect());

            // The output amplitudes are exactly the analysis coefficients in
            // lattice order.
            Signal f = random_unit_signal(g, "verify/qwht-state/" + tag + "/" +
                                                 std::to_string(i));
            std::vector<cplx> state = p.apply(f.values);
            WHCoefficients alpha = wh_analyze(f, w);
            dev_alpha = std::max(dev_alpha, max_abs_diff(state, alpha.values));
        }
        add("qwht", "pipeline-vs-direct/" + tag, dev_eq, 1e-10, note);
        add("qwht", "stage-unitarity/" + tag, dev_stage, 1e-10);
        add("qwht", "pipeline-unitarity/" + tag, dev_pipe, 1e-10);
        add("qwht", "state-matches-coefficients/" + tag, dev_alpha, 1e-10);
    }
};

}  // namespace

SuiteReport run_suites(const std::string& suite, const VerifyConfig& cfg) {
    if (!suite_name_valid(suite))
        fail(ErrorCode::parse_error,
             "unknown suite '" + suite + "' (expected all, zak, window, fgp, qzt or qwht)");

    SuiteReport report;
    report.suite = suite;
    SuiteRunner run{cfg, report};
    auto wants = [&](const char* s) { return suite == "all" || suite == s; };

    for (const FiniteAbelianGroup& g : battery_groups()) {
        std::vector<Subgroup> aligned = all_aligned_subgroups(g);
        std::vector<Subgroup> generated = sample_generated_subgroups(g, cfg.generated_per_group);

        if (wants("zak")) {
            run.zak_group_checks(g);
            for (const Subgroup& s : aligned) run.zak_pair_checks(s);
            for (const Subgroup& s : generated) run.zak_pair_checks(s);
        }
        if (wants("window"))
            for (const Subgroup& s : aligned) run.window_pair_checks(s);
        if (wants("fgp"))
            for (const Subgroup& s : aligned) run.fgp_pair_checks(s);
        if (wants("qzt")) {
            run.qzt_group_checks(g);
            for (const Subgroup& s : aligned) run.qzt_pair_checks(s);
            for (const Subgroup& s : generated) run.qzt_pair_checks(s);
        }
        if (wants("qwht")) {
            run.qwht_group_checks(g);
            for (const Subgroup& s : aligned) run.qwht_pair_checks(s);
        }
    }
    return report;
}

std::string report_to_json(const SuiteReport& report) {
    std::string out = "{\n";
    out += "  \"suite\": \"" + report.suite + "\",\n";
    out += std::string("  \"pass\": ") + (report.all_pass ? "true" : "false") + ",\n";
    out += "  \"max_deviation\": " + format_number(report.max_deviation) + ",\n";
    out += "  \"checks\": [\n";
    for (size_t i = 0; i < report.checks.size(); ++i) {
        const CheckResult& c = report.checks[i];
        out += "    {\"suite\": \"" + c.suite + "\", \"name\": \"" + c.name +
               "\", \"deviation\": " + format_number(c.deviation) +
               ", \"tolerance\": " + format_number(c.tolerance) + ", \"pass\": " +
               (c.pass ? "true" : "false");
        if (!c.note.empty()) out += ", \"note\": \"" + c.note + "\"";
        out += (i + 1 < report.checks.size()) ? "},\n" : "}\n";
    }
    out += "  ]\n}\n";
    return out;
}

}  // namespace tfq
