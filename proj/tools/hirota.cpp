// Command-line driver: generate fields, verify them, compare against the
// closed forms, list presets.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hirota/hirota.hpp"

namespace {

using namespace hirota;

struct InlineParams {
    std::optional<double> d1, d2, eps, alpha, m1, n1, m2, n2;

    bool any() const { return d1 || d2 || eps || alpha || m1 || n1 || m2 || n2; }

    void add_to(CLI::App* app) {
        app->add_option("--d1", d1, "background amplitude of u");
        app->add_option("--d2", d2, "background amplitude of v");
        app->add_option("--eps", eps, "higher-order coefficient epsilon");
        app->add_option("--alpha", alpha, "soliton / breather weight alpha");
        app->add_option("--m1", m1, "real part of s1");
        app->add_option("--n1", n1, "imaginary part of s1");
        app->add_option("--m2", m2, "real part of s2");
        app->add_option("--n2", n2, "imaginary part of s2");
    }

    // Overrides fields of `p` that were given on the command line.
    void apply(SeedParams& p) const {
        if (d1) p.d1 = *d1;
        if (d2) p.d2 = *d2;
        if (eps) p.eps = *eps;
        if (alpha) p.alpha = *alpha;
        std::map<int, Shift> given;
        for (std::size_t k = 0; k < p.s.size(); ++k) given[static_cast<int>(k) + 1] = p.s[k];
        if (m1) given[1].m = *m1;
        if (n1) given[1].n = *n1;
        if (m2) given[2].m = *m2;
        if (n2) given[2].n = *n2;
        p.s = shifts_from(given);
    }
};

struct Selection {
    SeedParams params;
    int order = 1;
    GridSpec grid;
    std::optional<std::string> preset;
};

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

Selection select(const std::string& preset, const std::string& params_file, const InlineParams& inl,
                 std::optional<int> order, const std::string& grid) {
    Selection s;
    if (!preset.empty()) {
        auto p = find_preset(preset);
        if (!p) throw UsageError("unknown preset '" + preset + "' (see `presets`)");
        s.params = p->params;
        s.order = p->order;
        s.grid = p->grid;
        s.preset = p->name;
    } else if (!params_file.empty()) {
        const ParamFile pf = parse_param_file(params_file);
        s.params = pf.params;
        if (pf.order) s.order = *pf.order;
    }
    inl.apply(s.params);
    if (order) s.order = *order;
    if (!grid.empty()) s.grid = parse_grid(grid);
    s.params.validate();
    if (s.order < 0) throw UsageError("order must be non-negative");
    return s;
}

void print_study(const char* label, const ConvergenceStudy& st) {
    std::printf("  %-15s", label);
    for (std::size_t k = 0; k < st.h.size(); ++k)
        std::printf("  h=%-9.4g max=%-11.4e rms=%-11.4e", st.h[k], st.reports[k].max_abs, st.reports[k].rms);
    std::printf("  order=%.3f\n", st.order());
}

int cmd_generate(const Selection& s, const std::string& out, unsigned threads) {
    const auto t0 = std::chrono::steady_clock::now();
    const PhaseArbitration arb = arbitrate_phase_reading(s.params);
    if (!arb.selected) {
        std::fprintf(stderr, "phase-reading arbitration inconclusive (orders: imaginary %.3f, real %.3f)\n",
                     arb.order_imaginary, arb.order_real);
        return 1;
    }
    EvalOptions opt;
    opt.threads = threads;
    opt.gdt.seed.reading = *arb.selected;
    const FieldGrid fg = evaluate_grid(s.params, s.order, s.grid, opt);
    RunManifest m;
    m.params = s.params;
    m.order = s.order;
    m.grid = s.grid;
    m.preset = s.preset;
    m.phase_reading = std::string(to_string(*arb.selected));
    m.lax_order_imaginary = arb.order_imaginary;
    m.lax_order_real = arb.order_real;
    m.shift_placement = std::string(to_string(opt.gdt.seed.placement));
    m.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    export_run(fg, m, out);
    std::printf("wrote %s/%s (%d x %d) and %s/%s\n", out.c_str(), kFieldFile, s.grid.nx, s.grid.nt, out.c_str(),
                kManifestFile);
    return 0;
}

int cmd_verify(const std::string& in, const Selection* s, unsigned threads) {
    ResidualStudy st;
    if (!in.empty()) {
        const auto [fg, m] = load_run(in);
        std::printf("verify %s (order %d, %d x %d)\n", in.c_str(), m.order, fg.spec.nx, fg.spec.nt);
        st = residual_study(fg);
    } else {
        EvalOptions opt;
        opt.threads = threads;
        std::printf("verify %s order %d on nested patches around the origin\n", s->preset ? s->preset->c_str() : "params",
                    s->order);
        st = residual_study(s->params, s->order, PatchSpec{}, 0.0, {0.05, 0.1}, opt);
    }
    print_study("pde", st.pde);
    print_study("zero-curvature", st.zero_curvature);
    const bool ok = st.pde.order() >= kMinConvergenceOrder && st.zero_curvature.order() >= kMinConvergenceOrder;
    std::printf("%s (required order >= %.1f)\n", ok ? "PASS" : "FAIL", kMinConvergenceOrder);
    return ok ? 0 : 1;
}

int cmd_compare(int order, const Selection& s, bool preset_given, unsigned threads) {
    EvalOptions opt;
    opt.threads = threads;
    if (order == 1) {
        const GridSpec g{-10.0, 10.0, 101, -5.0, 5.0, 101};
        const double err = compare_first_order(s.params, g, opt);
        const bool ok = err <= kFirstOrderOracleTol;
        std::printf("order 1: max relative error %.3e (tolerance %.0e) %s\n", err, kFirstOrderOracleTol,
                    ok ? "PASS" : "FAIL");
        return ok ? 0 : 1;
    }
    if (order == 2) {
        const SeedParams& p = s.params;
        if (preset_given && (p.d1 != 1.0 || p.d2 != 1.5 || p.alpha != 0.0))
            throw UsageError("the second-order closed form needs d1 = 1, d2 = 3/2, alpha = 0");
        const double m1 = p.s.empty() ? 0.0 : p.s[0].m;
        const double n1 = p.s.empty() ? 0.0 : p.s[0].n;
        const GridSpec g{-10.0, 10.0, 41, -5.0, 5.0, 41};
        const double err = compare_second_order(p.eps, m1, n1, g, oracles::SecondOrderTable::corrected, opt);
        const bool ok = err <= kSecondOrderOracleTol;
        std::printf("order 2 (m1 = %g, n1 = %g): max relative error %.3e (tolerance %.0e) %s\n", m1, n1, err,
                    kSecondOrderOracleTol, ok ? "PASS" : "FAIL");
        return ok ? 0 : 1;
    }
    throw UsageError("compare supports --order 1 or 2");
}

int cmd_presets() {
    for (const auto& p : presets()) {
        std::printf("%-6s N=%d d1=%g d2=%g eps=%g alpha=%g", p.name.c_str(), p.order, p.params.d1, p.params.d2,
                    p.params.eps, p.params.alpha);
        for (std::size_t k = 0; k < p.params.s.size(); ++k)
            std::printf(" m%zu=%g n%zu=%g", k + 1, p.params.s[k].m, k + 1, p.params.s[k].n);
        std::printf("  grid x[%g,%g]x%d t[%g,%g]x%d  %s\n", p.grid.xmin, p.grid.xmax, p.grid.nx, p.grid.tmin,
                    p.grid.tmax, p.grid.nt, p.description.c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Localized waves of the coupled Hirota equations"};
    app.require_subcommand(1);
    unsigned threads = 0;
    app.add_option("--threads", threads, "worker threads for grid evaluation (0 = all cores)");

    std::string preset, params_file, grid, out, in;
    std::optional<int> order;
    InlineParams inl;

    auto* gen = app.add_subcommand("generate", "evaluate a field on a grid and export CSV + manifest");
    gen->add_option("--preset", preset, "preset name");
    gen->add_option("--params", params_file, "parameter file (key = value)")->check(CLI::ExistingFile);
    gen->add_option("--order", order, "order N");
    gen->add_option("--grid", grid, "xmin,xmax,nx,tmin,tmax,nt");
    gen->add_option("--out", out, "output directory")->required();
    inl.add_to(gen);

    auto* ver = app.add_subcommand("verify", "residual convergence suite");
    ver->add_option("--in", in, "directory written by generate")->check(CLI::ExistingDirectory);
    ver->add_option("--preset", preset, "preset name");
    ver->add_option("--params", params_file, "parameter file")->check(CLI::ExistingFile);
    ver->add_option("--order", order, "order N");
    inl.add_to(ver);

    int cmp_order = 1;
    auto* cmp = app.add_subcommand("compare", "engine vs closed-form solution");
    cmp->add_option("--order", cmp_order, "1 or 2")->check(CLI::IsMember({1, 2}));
    cmp->add_option("--preset", preset, "preset name");
    cmp->add_option("--params", params_file, "parameter file")->check(CLI::ExistingFile);
    inl.add_to(cmp);

    auto* pre = app.add_subcommand("presets", "list the preset catalog");

    CLI11_PARSE(app, argc, argv);

    try {
        if (pre->parsed()) return cmd_presets();
        if (gen->parsed()) {
            if (preset.empty() && params_file.empty() && !inl.any())
                throw UsageError("generate needs --preset, --params or inline parameters");
            return cmd_generate(select(preset, params_file, inl, order, grid), out, threads);
        }
        if (ver->parsed()) {
            if (!in.empty()) return cmd_verify(in, nullptr, threads);
            if (preset.empty() && params_file.empty() && !inl.any())
                throw UsageError("verify needs --in, --preset, --params or inline parameters");
            const Selection s = select(preset, params_file, inl, order, "");
            return cmd_verify("", &s, threads);
        }
        if (cmp->parsed()) {
            Selection s;
            if (!preset.empty() || !params_file.empty() || inl.any()) s = select(preset, params_file, inl, std::nullopt, "");
            else if (cmp_order == 1) s.params = find_preset("fig1")->params;
            else s.params = second_order_params(0.01, 0.0, 0.0);
            return cmd_compare(cmp_order, s, !preset.empty() || !params_file.empty(), threads);
        }
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n\n%s", e.what(), app.help().c_str());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
