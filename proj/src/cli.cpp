#include "qrg/cli.hpp"

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qrg/chartable.hpp"
#include "qrg/conjugacy.hpp"
#include "qrg/errors.hpp"
#include "qrg/groupspec.hpp"
#include "qrg/product.hpp"
#include "qrg/spectral.hpp"
#include "qrg/subgroups.hpp"
#include "qrg/subset.hpp"
#include "qrg/words.hpp"

namespace qrg {
namespace {

using nlohmann::json;

constexpr const char* kToolName = "qrg";
constexpr const char* kToolVersion = "1.0.0";
constexpr int kSchemaVersion = 1;

struct RunConfig {
    std::uint64_t seed = 0;
    int workers = 1;
    std::uint64_t cap_enum = 10'000'000;
    std::uint64_t cap_dense = 4096;
    std::uint64_t cap_work = 2'000'000'000;
    double tolerance = 1e-10;
    std::string format = "json";
    std::string out;
};

void add_common_flags(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--seed", cfg.seed, "Master seed for seeded operations");
    sub->add_option("--workers", cfg.workers, "Worker thread count")
        ->check(CLI::Range(1, 256));
    sub->add_option("--cap-enum", cfg.cap_enum, "Group enumeration cap");
    sub->add_option("--cap-dense", cfg.cap_dense, "Dense eigensolver size cap");
    sub->add_option("--cap-work", cfg.cap_work, "Element-operation work cap");
    sub->add_option("--tol", cfg.tolerance, "Iterative eigensolver tolerance");
    sub->add_option("--format", cfg.format, "Report format (tsv: chartab only)")
        ->check(CLI::IsMember({"json", "tsv"}));
    sub->add_option("--out", cfg.out, "Write the report to this file instead of stdout");
}

GroupOptions group_options(const RunConfig& cfg) {
    GroupOptions o;
    o.cap_enum = cfg.cap_enum;
    return o;
}

ProductOptions product_options(const RunConfig& cfg) {
    ProductOptions o;
    o.workers = cfg.workers;
    o.work_cap = cfg.cap_work;
    o.seed = cfg.seed;
    return o;
}

SpectralOptions spectral_options(const RunConfig& cfg) {
    SpectralOptions o;
    o.cap_dense = cfg.cap_dense;
    o.tol = cfg.tolerance;
    o.workers = cfg.workers;
    return o;
}

// Worker count is deliberately not recorded: reports are byte-identical
// across worker counts and the field would break that.
json provenance_block(const RunConfig& cfg) {
    return json{
        {"caps",
         {{"dense", cfg.cap_dense}, {"enum", cfg.cap_enum}, {"work", cfg.cap_work}}},
        {"schema_version", kSchemaVersion},
        {"seed", cfg.seed},
        {"tolerance", cfg.tolerance},
        {"tool", {{"name", kToolName}, {"version", kToolVersion}}},
    };
}

void emit_text(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw InputError("cannot open output file: " + cfg.out);
    f << text;
}

void emit_report(const RunConfig& cfg, const char* subcommand, json inputs, json results) {
    json doc{
        {"inputs", std::move(inputs)},
        {"provenance", provenance_block(cfg)},
        {"results", std::move(results)},
        {"subcommand", subcommand},
    };
    emit_text(cfg, doc.dump(2) + "\n");
}

void require_json(const RunConfig& cfg) {
    if (cfg.format != "json")
        throw InputError("tsv output is only available for the chartab subcommand");
}

std::string fmt_real(double x) {
    // Character values are algebraic integers; lift error is ~1e-13, so a
    // value this close to an integer is that integer.
    if (std::abs(x - std::round(x)) < 1e-9) x = std::round(x) + 0.0; // normalize -0
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::string fmt_complex(std::complex<double> z) {
    if (std::abs(z.imag()) < 1e-10) return fmt_real(z.real());
    return fmt_real(z.real()) + (z.imag() < 0 ? "-" : "+") + fmt_real(std::abs(z.imag())) +
           "i";
}

json cover_json(const CoverReport& r) {
    return json{
        {"above_threshold", r.above_threshold},
        {"covers", r.covers},
        {"missing_sample", r.missing},
        {"products_computed", r.products_computed},
        {"subset_size", r.subset_size},
        {"threshold", r.threshold},
        {"vacuous", r.vacuous},
    };
}

json spectral_json(const SpectralReport& r) {
    return json{
        {"b_size", r.b_size},
        {"bound", r.bound},
        {"bound_holds", r.bound_holds},
        {"iterations", r.iterations},
        {"k", r.k},
        {"lambda1", r.lambda1},
        {"margin", r.margin},
        {"max_abs_ideal", r.max_abs_ideal},
        {"method", r.method},
        {"n", r.n},
        {"rowsum_exact", r.rowsum_exact},
        {"tolerance", r.tolerance},
        {"trace_exact", r.trace_exact},
    };
}

const char* backend_name(Backend b) {
    switch (b) {
    case Backend::Table: return "table";
    case Backend::Permutation: return "permutation";
    case Backend::Matrix: return "matrix";
    }
    return "unknown";
}

// ---------------------------------------------------------------- describe
void run_describe(const RunConfig& cfg, const std::string& group_spec) {
    require_json(cfg);
    const GroupSpec spec = parse_group_spec(group_spec);
    const GroupPtr G = build_group(spec, group_options(cfg));
    const std::size_t gens = G->enumerated() ? G->generators().size()
                                             : G->matrix_generators().size();
    json res{
        {"backend", backend_name(G->backend())},
        {"enumerated", G->enumerated()},
        {"generators", gens},
        {"order", G->order()},
    };
    if (const auto& lie = G->lie()) {
        const char* fam = lie->family == MatFamily::GL    ? "GL"
                          : lie->family == MatFamily::SL  ? "SL"
                          : lie->family == MatFamily::SU  ? "SU"
                          : lie->family == MatFamily::PSL ? "PSL"
                                                          : "PSU";
        res["lie"] = {{"dimension", lie->dim},
                      {"family", fam},
                      {"q", lie->q},
                      {"rank", lie->rank}};
    }
    if (G->enumerated()) {
        const ConjClasses cls = conjugacy_classes(*G);
        bool abelian = true;
        for (Elem a : G->generators())
            for (Elem b : G->generators())
                if (G->mul(a, b) != G->mul(b, a)) abelian = false;
        std::uint64_t exponent = 1;
        for (std::size_t i = 0; i < cls.count(); ++i)
            exponent = std::lcm(exponent, cls.elem_order[i]);
        res["abelian"] = abelian;
        res["classes"] = cls.count();
        res["exponent"] = exponent;
        res["perfect"] = is_perfect(*G);
        res["simple"] = is_simple(*G);
    }
    emit_report(cfg, "describe", json{{"group", group_spec}}, std::move(res));
}

// ----------------------------------------------------------------- chartab
void run_chartab(const RunConfig& cfg, const std::string& group_spec) {
    const GroupSpec spec = parse_group_spec(group_spec);
    const GroupPtr G = build_group(spec, group_options(cfg));
    const ConjClasses cls = conjugacy_classes(*G);
    const CharacterTable tab = character_table(*G, cls);
    if (cfg.format == "tsv") {
        std::string out;
        out += "# group\t" + group_spec + "\torder\t" + std::to_string(tab.n) + "\n";
        out += "# class_sizes";
        for (std::size_t j = 0; j < cls.count(); ++j)
            out += "\t" + std::to_string(cls.size[j]);
        out += "\n# class_orders";
        for (std::size_t j = 0; j < cls.count(); ++j)
            out += "\t" + std::to_string(cls.elem_order[j]);
        out += "\n";
        for (std::size_t i = 0; i < tab.values.size(); ++i) {
            out += "chi" + std::to_string(i);
            for (std::size_t j = 0; j < cls.count(); ++j)
                out += "\t" + fmt_complex(tab.values[i][j]);
            out += "\n";
        }
        emit_text(cfg, out);
        return;
    }
    json res{
        {"class_orders", cls.elem_order},
        {"class_sizes", cls.size},
        {"col_residual", tab.col_residual},
        {"degrees", tab.degrees},
        {"k", G->order() == 1 ? json() : json(min_nontrivial_degree(tab))},
        {"order", tab.n},
        {"prime", tab.ell},
        {"row_residual", tab.row_residual},
    };
    emit_report(cfg, "chartab", json{{"group", group_spec}}, std::move(res));
}

// ----------------------------------------------------------------------- k
void run_k(const RunConfig& cfg, const std::string& group_spec) {
    require_json(cfg);
    const GroupSpec spec = parse_group_spec(group_spec);
    const GroupPtr G = build_group(spec, group_options(cfg));
    const CharacterTable tab = character_table(*G, conjugacy_classes(*G));
    json res{
        {"degrees", tab.degrees},
        {"k", min_nontrivial_degree(tab)},
        {"n", tab.n},
    };
    emit_report(cfg, "k", json{{"group", group_spec}}, std::move(res));
}

// --------------------------------------------------------------------- mix
void run_mix(const RunConfig& cfg, const std::string& group_spec,
             const std::vector<std::string>& subset_specs) {
    require_json(cfg);
    if (subset_specs.size() != 1 && subset_specs.size() != 3)
        throw InputError("mix takes one symmetric subset or a triple A B C");
    const GroupSpec spec = parse_group_spec(group_spec);
    const GroupPtr G = build_group(spec, group_options(cfg));
    const std::uint64_t k = min_nontrivial_degree(*G);
    json inputs{{"group", group_spec}, {"subsets", subset_specs}};
    if (subset_specs.size() == 1) {
        const Subset B = parse_subset_spec(*G, subset_specs[0]);
        const SpectralReport r = verify_mixing_bound(*G, B, k, spectral_options(cfg));
        emit_report(cfg, "mix", std::move(inputs), spectral_json(r));
        return;
    }
    const Subset A = parse_subset_spec(*G, subset_specs[0]);
    const Subset B = parse_subset_spec(*G, subset_specs[1]);
    const Subset C = parse_subset_spec(*G, subset_specs[2]);
    const TripleWitness w = mixing_triple_witness(*G, A, B, C, k);
    json res{
        {"found", w.found},
        {"guaranteed", w.guaranteed},
        {"k", k},
        {"n", G->order()},
        {"pairs_scanned", w.pairs_scanned},
        {"sizes", {A.count, B.count, C.count}},
        {"witness", w.found ? json{{"a", w.a}, {"b", w.b}, {"c", w.c}} : json()},
    };
    emit_report(cfg, "mix", std::move(inputs), std::move(res));
}

// ------------------------------------------------------------------- cover
void run_cover(const RunConfig& cfg, const std::string& group_spec,
               const std::string& subset_spec, const std::string& rule) {
    require_json(cfg);
    const GroupSpec spec = parse_group_spec(group_spec);
    const GroupPtr G = build_group(spec, group_options(cfg));
    const Subset B = parse_subset_spec(*G, subset_spec);
    json res;
    if (rule == "k") {
        const std::uint64_t k = min_nontrivial_degree(*G);
        res = cover_json(triple_product_covers(*G, B, k, product_options(cfg)));
        res["k"] = k;
    } else {
        res = cover_json(psl_covering_check(*G, B, product_options(cfg)));
    }
    res["rule"] = rule;
    emit_report(cfg, "cover",
                json{{"group", group_spec}, {"rule", rule}, {"subset", subset_spec}},
                std::move(res));
}

// ------------------------------------------------------------- productfree
void run_productfree(const RunConfig& cfg, const std::string& group_spec, bool exact) {
    require_json(cfg);
    const GroupSpec spec = parse_group_spec(group_spec);
    const GroupPtr G = build_group(spec, group_options(cfg));
    const ConjClasses cls = conjugacy_classes(*G);
    json res;
    if (exact) {
        const AlphaReport a = alpha_exact(*G);
        res["alpha"] = a.alpha;
        res["nodes"] = a.nodes;
        res["witness"] = a.witness;
    } else {
        const ProductFreeSearchReport r = product_free_search(*G, cls, product_options(cfg));
        res["best_coset_subgroup"] = r.best_coset_subgroup;
        res["best_size"] = r.best_size;
        res["lattice_certified"] = r.lattice_certified;
        res["method"] = r.method;
        res["witness"] = r.witness;
    }
    if (G->order() > 1) {
        const std::uint64_t k = min_nontrivial_degree(*G);
        res["bound"] = static_cast<double>(G->order()) / std::cbrt(static_cast<double>(k));
        res["k"] = k;
    }
    res["n"] = G->order();
    emit_report(cfg, "productfree", json{{"exact", exact}, {"group", group_spec}},
                std::move(res));
}

// ----------------------------------------------------------------- profile
void run_profile(const RunConfig& cfg, const std::string& group_spec) {
    require_json(cfg);
    const GroupSpec spec = parse_group_spec(group_spec);
    const GroupPtr G = build_group(spec, group_options(cfg));
    const QuasirandomProfile p = quasirandomness_profile(*G, product_options(cfg));
    json res{
        {"c3_empirical", p.c3_empirical},
        {"c3_threshold", p.c3_threshold},
        {"k", p.k},
        {"min_index", p.min_index},
        {"min_index_certified", p.min_index_certified},
        {"n", p.n},
        {"perfect", p.perfect},
        {"product_free_bound", p.product_free_bound},
        {"product_free_found", p.product_free_found},
    };
    emit_report(cfg, "profile", json{{"group", group_spec}}, std::move(res));
}

// ---------------------------------------------------------------- minindex
void run_minindex(const RunConfig& cfg, const std::string& group_spec) {
    require_json(cfg);
    const GroupSpec spec = parse_group_spec(group_spec);
    const GroupPtr G = build_group(spec, group_options(cfg));
    const ConjClasses cls = conjugacy_classes(*G);
    const MinIndexReport r = min_proper_subgroup_index(*G, cls);
    json res{
        {"best_order", r.best_order},
        {"certified", r.certified},
        {"index", r.index},
        {"n", G->order()},
        {"subgroups_seen", r.subgroups_seen},
    };
    emit_report(cfg, "minindex", json{{"group", group_spec}}, std::move(res));
}

// ------------------------------------------------------------------ growth
void run_growth(const RunConfig& cfg, const std::string& group_spec,
                const std::string& subset_spec) {
    require_json(cfg);
    const GroupSpec spec = parse_group_spec(group_spec);
    const GroupPtr G = build_group(spec, group_options(cfg));
    const Subset X = parse_subset_spec(*G, subset_spec);
    const CoverExponentReport r = cover_exponent(*G, X, product_options(cfg));
    json res{
        {"closure_order", r.closure_order},
        {"cycle_detected", r.cycle_detected},
        {"exponent", r.exponent ? json(*r.exponent) : json()},
        {"generates", r.generates},
        {"growth", r.growth},
        {"n", G->order()},
        {"subset_size", X.count},
    };
    emit_report(cfg, "growth", json{{"group", group_spec}, {"subset", subset_spec}},
                std::move(res));
}

// -------------------------------------------------------------------- word
std::vector<std::string> strip_padding(const std::vector<std::string>& texts) {
    std::vector<std::string> out;
    out.reserve(texts.size());
    for (const auto& t : texts) {
        const std::size_t a = t.find_first_not_of(" \t");
        const std::size_t b = t.find_last_not_of(" \t");
        out.push_back(a == std::string::npos ? std::string() : t.substr(a, b - a + 1));
    }
    return out;
}

std::vector<Word> parse_words(const std::vector<std::string>& texts) {
    if (texts.empty()) throw InputError("need at least one word");
    std::vector<Word> ws;
    ws.reserve(texts.size());
    for (const auto& t : texts) ws.push_back(parse_word(t));
    return ws;
}

WordValueOptions word_options(const RunConfig& cfg, std::uint64_t trials) {
    WordValueOptions o;
    o.work_cap = cfg.cap_work;
    o.trials = trials;
    o.seed = cfg.seed;
    o.workers = cfg.workers;
    return o;
}

void run_word_values(const RunConfig& cfg, const std::string& group_spec,
                     const std::vector<std::string>& word_texts, std::uint64_t trials) {
    require_json(cfg);
    const GroupPtr G = build_group(parse_group_spec(group_spec), group_options(cfg));
    const std::vector<std::string> texts = strip_padding(word_texts);
    const std::vector<Word> ws = parse_words(texts);
    const WordValueSet v = word_value_set(*G, ws, word_options(cfg, trials));
    json res{
        {"density", v.density},
        {"exact", v.exact},
        {"n", G->order()},
        {"radius", v.radius},
        {"size", v.size},
        {"trials", v.trials},
    };
    json canon = json::array();
    for (const auto& w : ws) canon.push_back(word_to_string(w));
    res["words"] = std::move(canon);
    emit_report(cfg, "word values", json{{"group", group_spec}, {"words", texts}},
                std::move(res));
}

void run_word_waring(const RunConfig& cfg, const std::string& group_spec,
                     const std::vector<std::string>& word_texts, bool sparse,
                     bool distinct) {
    require_json(cfg);
    const GroupPtr G = build_group(parse_group_spec(group_spec), group_options(cfg));
    const std::vector<std::string> texts = strip_padding(word_texts);
    const std::vector<Word> ws = parse_words(texts);
    const WaringReport r = waring_check(*G, ws, sparse, distinct, word_options(cfg, 0));
    json res{
        {"cover", cover_json(r.cover)},
        {"distinct_checked", r.distinct_checked},
        {"distinct_covers", r.distinct_covers},
        {"distinct_failures", r.distinct_failures},
        {"empirical", r.empirical},
        {"n", G->order()},
        {"sparse", r.sparse},
        {"sparse_size", r.sparse_size},
        {"wbar_size", r.wbar_size},
    };
    emit_report(cfg, "word waring",
                json{{"distinct", distinct},
                     {"group", group_spec},
                     {"sparse", sparse},
                     {"words", texts}},
                std::move(res));
}

void run_word_rs(const RunConfig& cfg, const std::string& group_spec,
                 std::uint64_t trials) {
    require_json(cfg);
    const GroupPtr G = build_group(parse_group_spec(group_spec), group_options(cfg));
    const RsFraction r = rs_fraction(*G, word_options(cfg, trials));
    json res{
        {"exact", r.exact},
        {"fraction", r.fraction},
        {"hits", r.hits},
        {"q", r.q},
        {"radius", r.radius},
        {"total", r.total},
    };
    emit_report(cfg, "word rs", json{{"group", group_spec}, {"trials", trials}},
                std::move(res));
}

void run_word_genprob(const RunConfig& cfg, const std::string& group_spec,
                      const std::vector<std::string>& word_texts, std::uint64_t trials) {
    require_json(cfg);
    const GroupPtr G = build_group(parse_group_spec(group_spec), group_options(cfg));
    const std::vector<std::string> texts = strip_padding(word_texts);
    const std::vector<Word> ws = parse_words(texts);
    const GenProbReport r = random_pair_generates(*G, ws, trials, word_options(cfg, 0));
    json res{
        {"frequency", r.frequency},
        {"n", G->order()},
        {"successes", r.successes},
        {"trials", r.trials},
        {"wbar_size", r.wbar_size},
    };
    emit_report(cfg, "word genprob",
                json{{"group", group_spec}, {"trials", trials}, {"words", texts}},
                std::move(res));
}

} // namespace

int cli_main(int argc, const char* const* argv) {
    RunConfig cfg;
    std::string group_spec;
    std::vector<std::string> subset_specs;
    std::string subset_spec;
    std::string rule = "k";
    std::vector<std::string> word_texts;
    bool exact = false;
    bool sparse = false;
    bool distinct = false;
    std::uint64_t trials_values = 1'000'000;
    std::uint64_t trials_rs = 100'000;
    std::uint64_t trials_genprob = 200;

    CLI::App app{"Quasirandom-group calculator: representation degrees, convolution "
                 "spectra, product coverings, product-free sets and word values for "
                 "finite groups."};
    app.require_subcommand(1);

    auto* describe = app.add_subcommand("describe", "Order, classes and basic structure");
    describe->add_option("group", group_spec, "Group spec, e.g. PSL(2,7)")->required();
    add_common_flags(describe, cfg);
    describe->callback([&]() { run_describe(cfg, group_spec); });

    auto* chartab = app.add_subcommand("chartab", "Complex irreducible character table");
    chartab->add_option("group", group_spec, "Group spec")->required();
    add_common_flags(chartab, cfg);
    chartab->callback([&]() { run_chartab(cfg, group_spec); });

    auto* kcmd = app.add_subcommand("k", "Least nontrivial irreducible degree");
    kcmd->add_option("group", group_spec, "Group spec")->required();
    add_common_flags(kcmd, cfg);
    kcmd->callback([&]() { run_k(cfg, group_spec); });

    auto* mix = app.add_subcommand(
        "mix", "Convolution spectrum bound for B, or a product witness for A B C");
    mix->add_option("group", group_spec, "Group spec")->required();
    mix->add_option("subsets", subset_specs, "One symmetric subset, or three subsets")
        ->required()
        ->expected(1, 3);
    add_common_flags(mix, cfg);
    mix->callback([&]() { run_mix(cfg, group_spec, subset_specs); });

    auto* cover = app.add_subcommand("cover", "Triple-product covering B^3 = G");
    cover->add_option("group", group_spec, "Group spec")->required();
    cover->add_option("subset", subset_spec, "Subset spec")->required();
    cover->add_option("--rule", rule, "Threshold rule: k (n/k^(1/3)) or psl (2n/q^((d-1)/3))")
        ->check(CLI::IsMember({"k", "psl"}));
    add_common_flags(cover, cfg);
    cover->callback([&]() { run_cover(cfg, group_spec, subset_spec, rule); });

    auto* pf = app.add_subcommand("productfree", "Product-free set search or exact maximum");
    pf->add_option("group", group_spec, "Group spec")->required();
    pf->add_flag("--exact", exact, "Exact maximum by branch and bound (order <= 200)");
    add_common_flags(pf, cfg);
    pf->callback([&]() { run_productfree(cfg, group_spec, exact); });

    auto* profile = app.add_subcommand("profile", "Quasirandomness profile");
    profile->add_option("group", group_spec, "Group spec")->required();
    add_common_flags(profile, cfg);
    profile->callback([&]() { run_profile(cfg, group_spec); });

    auto* minindex = app.add_subcommand("minindex", "Least index of a proper subgroup");
    minindex->add_option("group", group_spec, "Group spec")->required();
    add_common_flags(minindex, cfg);
    minindex->callback([&]() { run_minindex(cfg, group_spec); });

    auto* growth = app.add_subcommand("growth", "Positive product-set growth X, X^2, ...");
    growth->add_option("group", group_spec, "Group spec")->required();
    growth->add_option("subset", subset_spec, "Subset spec")->required();
    add_common_flags(growth, cfg);
    growth->callback([&]() { run_growth(cfg, group_spec, subset_spec); });

    auto* word = app.add_subcommand("word", "Word-value computations");
    word->require_subcommand(1);

    auto* values = word->add_subcommand("values", "Value set of one or more words");
    values->add_option("group", group_spec, "Group spec")->required();
    values->add_option("words", word_texts, "Words, e.g. x1^2 or [x1,x2]")->required();
    values->add_option("--trials", trials_values, "Sampling trials when over the work cap");
    add_common_flags(values, cfg);
    values->callback(
        [&]() { run_word_values(cfg, group_spec, word_texts, trials_values); });

    auto* waring = word->add_subcommand("waring", "Cube covering of a word-value set");
    waring->add_option("group", group_spec, "Group spec")->required();
    waring->add_option("words", word_texts, "Words defining the value set")->required();
    waring->add_flag("--sparse", sparse, "Sample W of size ceil(|wbar|/q^(r/13))");
    waring->add_flag("--distinct", distinct, "Also require pairwise distinct factors");
    add_common_flags(waring, cfg);
    waring->callback(
        [&]() { run_word_waring(cfg, group_spec, word_texts, sparse, distinct); });

    auto* rs = word->add_subcommand("rs", "Regular semisimple fraction of a matrix group");
    rs->add_option("group", group_spec, "Group spec")->required();
    rs->add_option("--trials", trials_rs, "Monte Carlo samples when not enumerable");
    add_common_flags(rs, cfg);
    rs->callback([&]() { run_word_rs(cfg, group_spec, trials_rs); });

    auto* genprob = word->add_subcommand("genprob", "How often two word values generate");
    genprob->add_option("group", group_spec, "Group spec")->required();
    genprob->add_option("words", word_texts, "Words defining the value set")->required();
    genprob->add_option("--trials", trials_genprob, "Sampled pairs");
    add_common_flags(genprob, cfg);
    genprob->callback(
        [&]() { run_word_genprob(cfg, group_spec, word_texts, trials_genprob); });

    // CLI11 expands a bare "[a,b]" token into comma-separated pieces, which
    // would destroy commutator words before they reach the word parser.  A
    // leading space defeats the expansion and is stripped again in
    // parse_words.
    std::vector<std::string> raw_args;
    raw_args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a.size() >= 2 && a.front() == '[' && a.back() == ']') a.insert(0, " ");
        raw_args.push_back(std::move(a));
    }
    std::vector<const char*> padded;
    padded.reserve(raw_args.size() + 1);
    padded.push_back(argc > 0 ? argv[0] : "qrg");
    for (const std::string& a : raw_args) padded.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(padded.size()), padded.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const InputError& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 2;
    } catch (const CapExceeded& e) {
        std::fprintf(stderr, "cap exceeded: %s\n", e.what());
        return 3;
    } catch (const TheoremViolation& e) {
        std::fprintf(stderr, "guarantee violated: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 1;
    }
    return 0;
}

} // namespace qrg
