#include "motex/answers.hpp"
#include "motex/cache.hpp"
#include "motex/chart.hpp"
#include "motex/parallel.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

using namespace motex;

namespace {

struct CommonOpts {
    std::string base = "algclosed";
    int q = 0;
    int max_stem = 20;
    int max_s = 14;
    int weight_lo = -12;
    int weight_hi = 12;
    int threads = 0;
    std::string out;
};

BaseRing make_base(const std::string& base, int& q) {
    FieldTag tag = parse_field(base);
    if (q == 0) q = tag == FieldTag::FqOne ? 5 : tag == FieldTag::FqThree ? 3 : 0;
    return BaseRing::make(tag, q);
}

void write_out(const std::string& out, const std::string& content) {
    if (out.empty() || out == "-") {
        std::cout << content;
        return;
    }
    write_file(out, content);
    std::cerr << "wrote " << out << "\n";
}

PresentedModule named_module(const std::string& name, std::shared_ptr<const AlgebraTable> alg,
                             int truncation) {
    const bool classical = alg->base().classical();
    if (name == "m2") return trivial_module(alg, truncation);
    if (name == "bc2") {
        if (alg->name() == AlgebraName::E1) {
            auto a1 = std::make_shared<AlgebraTable>(AlgebraTable::make(AlgebraName::A1, alg->base()));
            return restrict_module(bc2_cohomology(a1, truncation), alg);
        }
        return bc2_cohomology(alg, truncation);
    }
    auto over_a1 = [&] {
        auto a1 = std::make_shared<AlgebraTable>(AlgebraTable::make(AlgebraName::A1, alg->base()));
        return bc2_cohomology(a1, truncation);
    };
    if (name == "Q") return build_ses(SesScheme::KqQR, over_a1()).sub;
    if (name == "R") return build_ses(SesScheme::KqQR, over_a1()).quotient;
    if (name == "V") {
        auto a1 = std::make_shared<AlgebraTable>(AlgebraTable::make(AlgebraName::A1, alg->base()));
        auto he1 = restrict_module(bc2_cohomology(a1, truncation), alg);
        return build_ses(classical ? SesScheme::ClassicalKu : SesScheme::KglSplit, he1).quotient;
    }
    if (name == "C") return quotient_algebra_module(alg, AlgebraName::E1, truncation);
    if (name == "A1//A0") return quotient_algebra_module(alg, AlgebraName::A0, truncation);
    /* otherwise: a module definition file */
    return module_from_records(read_records(name), alg);
}

int cmd_ext(const CommonOpts& c, const std::string& algebra, const std::string& module,
            bool use_cache) {
    int q = c.q;
    BaseRing base = make_base(c.base, q);
    auto alg = std::make_shared<AlgebraTable>(AlgebraTable::make(parse_algebra(algebra), base));
    ExtWindow W{c.max_s, -std::max(4, c.max_stem / 2), c.max_stem,
                base.classical() ? 0 : c.weight_lo, base.classical() ? 0 : c.weight_hi};
    int max_t = required_max_t(base.tag(), W);
    PresentedModule m = named_module(module, alg, max_t + 2);
    m.validate_or_throw();
    if (m.truncation() < max_t + 2) {
        /* a module definition file fixes its own truncation; shrink the
         * window to fit instead of rejecting it */
        max_t = m.truncation() - 2;
        W.max_s = std::min(W.max_s, max_t - 1);
        W.stem_hi = std::min(W.stem_hi, max_t - W.max_s - 1);
        std::cerr << "window clipped to the module truncation: max stem " << W.stem_hi
                  << ", max filtration " << W.max_s << "\n";
    }

    Resolution res(m);
    std::string key = cache_dir() + "/" + cache_key(m, W.max_s + 1, max_t);
    bool loaded = false;
    if (use_cache && std::filesystem::exists(key)) {
        res = load_resolution(key, m);
        loaded = true;
        std::cerr << "cache hit: " << key << " (revalidated)\n";
    } else {
        res.extend(W.max_s + 1, max_t);
    }
    if (use_cache && !loaded) {
        std::filesystem::create_directories(cache_dir());
        save_resolution(key, res);
    }
    ExtChart chart = ext_groups(res, W);
    ChartDocument doc = chart_from_ext(
        chart, "Ext over " + algebra_name_str(alg->name()) + " of " + m.name() + " / " + base.name(),
        base.classical());
    write_out(c.out, chart_to_json(doc));
    return 0;
}

int cmd_bockstein(const CommonOpts& c, const std::string& algebra) {
    int q = c.q;
    BaseRing base = make_base(c.base, q);
    if (!base.has_sec()) throw std::runtime_error("bockstein: target base must carry rho or u");
    AlgebraName name = parse_algebra(algebra);
    RingSpec ring = adjoin_second(ext_ring_over_closed(name, true), base.tag());
    std::string alg_low = algebra_name_str(name);
    for (auto& ch : alg_low) ch = char(std::tolower(ch));
    std::string file = base.tag() == FieldTag::Reals ? "rules/bockstein_reals_" + alg_low + ".kv"
                                                     : "rules/bockstein_fq3_" + alg_low + ".kv";
    auto rules = rules_from_records(read_records(data_path(file)), ring, q, 0);
    PageWindow W{c.max_s, -std::max(4, c.max_stem / 2), c.max_stem, c.weight_lo, c.weight_hi};
    PageRun run(ring, W);
    run.run(rules, 1, 4, SsKind::Bockstein);
    ChartDocument doc;
    doc.kind = "ext";
    doc.title = "rho-Bockstein E-infinity for " + algebra_name_str(name) + " / " + base.name();
    for (int n = W.stem_lo; n <= W.stem_hi; ++n)
        for (int s = 0; s <= W.max_s; ++s)
            for (int w = W.w_lo; w <= W.w_hi; ++w)
                for (const auto& nm : run.class_names(n, s, w))
                    doc.classes.push_back({n, s, w, nm, "dot"});
    write_out(c.out, chart_to_json(doc));
    std::cerr << "pages run: E1..E" << run.pages_run() << ", surviving classes " << run.total_dim()
              << "\n";
    return 0;
}

int cmd_adamsfq(const CommonOpts& c, const std::string& algebra) {
    int q = c.q;
    BaseRing base = make_base(c.base, q);
    if (!base.sec_square_zero()) throw std::runtime_error("adamsfq: base must be fq1 or fq3");
    AlgebraName name = parse_algebra(algebra);
    RingSpec ring = adjoin_second(ext_ring_over_closed(name, true), base.tag());
    PageWindow W{c.max_s, -std::max(4, c.max_stem / 2), c.max_stem, c.weight_lo, c.weight_hi};
    PageRun run(ring, W);
    int max_bit = 1;
    while ((1 << (max_bit + 1)) <= c.max_stem + 4 - c.weight_lo) ++max_bit;
    std::string alg_low = algebra_name_str(name);
    for (auto& ch : alg_low) ch = char(std::tolower(ch));
    if (base.tag() == FieldTag::FqThree) {
        auto bss = rules_from_records(read_records(data_path("rules/bockstein_fq3_" + alg_low + ".kv")),
                                      ring, q, 0);
        run.run(bss, 1, 1, SsKind::Bockstein);
    }
    auto adams = rules_from_records(
        read_records(data_path(base.tag() == FieldTag::FqOne ? "rules/adams_fq1.kv"
                                                             : "rules/adams_fq3.kv")),
        ring, q, max_bit);
    int top = 2;
    for (const auto& r : adams) top = std::max(top, r.page);
    run.run(adams, 2, top, SsKind::Adams);
    ChartDocument doc;
    doc.kind = "ext";
    doc.title = "Adams E-infinity for " + algebra_name_str(name) + " / " + base.name();
    for (int n = W.stem_lo; n <= W.stem_hi; ++n)
        for (int s = 0; s <= W.max_s; ++s)
            for (int w = W.w_lo; w <= W.w_hi; ++w)
                for (const auto& nm : run.class_names(n, s, w))
                    doc.classes.push_back({n, s, w, nm, "dot"});
    write_out(c.out, chart_to_json(doc));
    std::cerr << "differentials fired: " << run.log().size() << " families, E"
              << run.pages_run() << " reached\n";
    return 0;
}

int cmd_ahss(const CommonOpts& c, const std::string& theory, int skeleton) {
    int q = c.q;
    BaseRing base = make_base(c.base, q);
    Theory th = parse_theory(theory);
    AhssOptions opt;
    opt.n_hi = c.max_stem;
    opt.w_lo = base.classical() ? 0 : c.weight_lo;
    opt.h0_cap = std::max(16, c.max_s + 4);
    opt.skeleton = skeleton;
    auto table = coefficient_table_for(th, base.tag(), q, opt);
    auto cells = CellComplex::build(opt.skeleton, base.classical());
    auto rules = load_ahss_rules(th, base.tag(), table);
    AhssResult res = run_ahss(cells, table, rules, opt);
    ChartDocument doc =
        chart_from_ahss(res, table, "AHSS gr for " + theory + " of BC2 / " + base.name());
    write_out(c.out, chart_to_json(doc));
    std::cerr << "differentials fired on pages:";
    int last = 1;
    for (const auto& f : res.log) last = std::max(last, f.page);
    for (int r = 1; r <= last; ++r) {
        int cnt = 0;
        for (const auto& f : res.log)
            if (f.page == r) cnt += f.rank;
        std::cerr << " d" << r << ":" << cnt;
    }
    std::cerr << "; collapsed at E" << res.collapsed_at << "\n";
    for (const auto& n : res.notes) std::cerr << "note: " << n << "\n";
    return 0;
}

int cmd_chart(const std::string& input, const std::string& format, std::optional<int> coweight,
              const std::string& out) {
    ChartDocument doc = chart_from_json(read_file(input));
    ChartOptions opt;
    opt.coweight = coweight;
    write_out(out, emit_chart(doc, parse_chart_format(format), opt));
    return 0;
}

int cmd_verify(const std::string& id, bool all, int threads) {
    auto tables = load_all_answer_tables();
    bool pass = true;
    int run = 0;
    for (const auto& t : tables) {
        if (!all && t.id != id) continue;
        if (all && t.id.rfind("negative-", 0) == 0) continue;
        ++run;
        VerifyReport rep = verify_table(t, threads);
        std::cout << (rep.pass ? "PASS " : "FAIL ") << rep.id << " (" << rep.entries_checked
                  << " entries";
        if (rep.insufficient_range) std::cout << ", insufficient range";
        std::cout << ")\n";
        for (const auto& d : rep.diffs) std::cout << "  " << d << "\n";
        pass = pass && rep.pass;
    }
    if (run == 0) {
        std::cerr << "no such table: " << id << "\n";
        return 2;
    }
    return pass ? 0 : 1;
}

int cmd_cache(const std::string& action) {
    std::string dir = cache_dir();
    if (action == "inspect") {
        if (!std::filesystem::exists(dir)) {
            std::cout << "cache directory " << dir << " is empty\n";
            return 0;
        }
        for (const auto& e : std::filesystem::directory_iterator(dir))
            std::cout << e.path().filename().string() << "  " << std::filesystem::file_size(e.path())
                      << " bytes\n";
        return 0;
    }
    if (action == "clear") {
        if (std::filesystem::exists(dir)) std::filesystem::remove_all(dir);
        std::cout << "cleared " << dir << "\n";
        return 0;
    }
    std::cerr << "cache action must be inspect or clear\n";
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Ext, Bockstein/Adams and cellular spectral sequence engine for BC2"};
    app.set_config("--config", "", "read options from a config file");
    app.require_subcommand(1);

    CommonOpts c;
    std::string algebra = "E1", module = "bc2", theory = "kq";
    std::string chart_in, chart_format = "text", verify_id;
    int skeleton = 24;
    bool verify_all = false, no_cache = false;
    std::optional<int> coweight;

    auto add_common = [&](CLI::App* s) {
        s->add_option("--base", c.base, "classical|algclosed|reals|fq1|fq3");
        s->add_option("--q", c.q, "odd prime power for finite fields");
        s->add_option("--max-stem", c.max_stem);
        s->add_option("--max-filtration", c.max_s);
        s->add_option("--weight-lo", c.weight_lo);
        s->add_option("--weight-hi", c.weight_hi);
        s->add_option("--threads", c.threads);
        s->add_option("--out", c.out, "output file (default stdout)");
    };

    auto* ext = app.add_subcommand("ext", "resolve a module and chart its Ext");
    add_common(ext);
    ext->add_option("--algebra", algebra, "A0|E1|A1");
    ext->add_option("--module", module, "m2|bc2|Q|R|V|C|A1//A0 or a module file");
    ext->add_flag("--no-cache", no_cache, "skip the resolution cache");

    auto* bss = app.add_subcommand("bockstein", "rho-Bockstein run from the closed-field input");
    add_common(bss);
    bss->add_option("--algebra", algebra);

    auto* afq = app.add_subcommand("adamsfq", "finite-field Adams differential run");
    add_common(afq);
    afq->add_option("--algebra", algebra);

    auto* ah = app.add_subcommand("ahss", "cellular spectral sequence for BC2");
    add_common(ah);
    ah->add_option("--theory", theory, "hz|ku|ko|kgl|kq");
    ah->add_option("--skeleton", skeleton);

    auto* ch = app.add_subcommand("chart", "re-render a chart json document");
    ch->add_option("--input", chart_in)->required();
    ch->add_option("--format", chart_format, "svg|json|text");
    ch->add_option("--coweight", coweight, "keep coweight = c mod 4");
    ch->add_option("--out", c.out);

    auto* ver = app.add_subcommand("verify", "check computed answers against the stated tables");
    ver->add_option("--table", verify_id);
    ver->add_flag("--all", verify_all);
    ver->add_option("--threads", c.threads);

    auto* ca = app.add_subcommand("cache", "inspect or clear the resolution cache");
    std::string cache_action = "inspect";
    ca->add_option("action", cache_action, "inspect|clear");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c.threads > 0) setenv("MOTEX_THREADS", std::to_string(c.threads).c_str(), 1);
        if (ext->parsed()) return cmd_ext(c, algebra, module, !no_cache);
        if (bss->parsed()) return cmd_bockstein(c, algebra);
        if (afq->parsed()) return cmd_adamsfq(c, algebra);
        if (ah->parsed()) return cmd_ahss(c, theory, skeleton);
        if (ch->parsed()) return cmd_chart(chart_in, chart_format, coweight, c.out);
        if (ver->parsed()) return cmd_verify(verify_id, verify_all || verify_id.empty(), c.threads);
        if (ca->parsed()) return cmd_cache(cache_action);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
