#include "wfano/brute.hpp"
#include "wfano/census_io.hpp"
#include "wfano/classify.hpp"
#include "wfano/cyg.hpp"
#include "wfano/qsmooth.hpp"
#include "wfano/search.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#ifndef WFANO_GIT_HASH
#define WFANO_GIT_HASH "unknown"
#endif

using namespace wfano;
using ordered_json = nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, usage = 1, invariant = 2, mismatch = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutputOptions {
    std::string out;
    std::string summary;
    std::string format = "jsonl";
};

void add_output_flags(CLI::App *cmd, OutputOptions &o)
{
    cmd->add_option("--out", o.out, "Census file (default: stdout)");
    cmd->add_option("--summary", o.summary, "Summary JSON (default: <out>.summary.json)");
    cmd->add_option("--format", o.format, "jsonl or csv")
        ->check(CLI::IsMember({"jsonl", "csv"}));
}

std::vector<Int> parse_weights(const std::string &text)
{
    std::vector<Int> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find(',', pos);
        if (end == std::string::npos)
            end = text.size();
        const std::string item = text.substr(pos, end - pos);
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(item, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (item.empty() || used != item.size() || v < 1)
            throw UsageError("expected a positive integer at position " + std::to_string(pos + 1) +
                             " of '" + text + "'");
        out.push_back(v);
        pos = end + 1;
    }
    return out;
}

ordered_json counts_json(const CensusCounts &c)
{
    return {{"records", c.records},     {"quasi_smooth", c.quasi_smooth},
            {"terminal", c.terminal},   {"tiger_free", c.tiger_free},
            {"ke", c.ke},               {"series_members", c.series_members}};
}

// Writes the census and its summary. Summary lines go to stderr so that
// stdout can carry the census itself.
void emit(const OutputOptions &o, std::vector<ClassifiedRecord> records, ordered_json summary)
{
    sort_census(records);
    std::ofstream file;
    if (!o.out.empty()) {
        file.open(o.out);
        if (!file)
            throw UsageError("cannot write " + o.out);
    }
    std::ostream &out = o.out.empty() ? std::cout : file;
    if (o.format == "csv")
        write_csv(out, records);
    else
        write_jsonl(out, records);

    summary["counts"] = counts_json(count_flags(records));
    summary["git"] = WFANO_GIT_HASH;
    std::string path = o.summary;
    if (path.empty() && !o.out.empty())
        path = o.out + ".summary.json";
    if (!path.empty()) {
        std::ofstream s(path);
        s << summary.dump(2) << '\n';
    }
    std::cerr << "summary:";
    for (const auto &[k, v] : summary.items())
        if (v.is_primitive())
            std::cerr << ' ' << k << '=' << v.dump();
    for (const auto &[k, v] : summary["counts"].items())
        std::cerr << ' ' << k << '=' << v.dump();
    std::cerr << '\n';
}

std::vector<ClassifiedRecord> read_census(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot read " + path);
    try {
        return read_jsonl(in);
    } catch (const CensusFormatError &e) {
        throw UsageError(path + ": " + e.what());
    }
}

std::string monomial_text(const Monomial &m)
{
    std::string s;
    for (std::size_t i = 0; i < m.exponents.size(); ++i) {
        if (m.exponents[i] == 0)
            continue;
        if (!s.empty())
            s += ' ';
        s += "x" + std::to_string(i);
        if (m.exponents[i] > 1)
            s += "^" + std::to_string(m.exponents[i]);
    }
    return s.empty() ? "1" : s;
}

int cmd_check(const std::string &text, std::optional<Int> degree, bool as_json)
{
    const std::vector<Int> raw = parse_weights(text);
    if (raw.size() < 2 || raw.size() > max_weights)
        throw UsageError("need between 2 and 32 weights");
    ordered_json j;
    j["weights"] = raw;
    const auto violation = well_formedness_violation(raw);
    j["well_formed"] = !violation;
    if (violation) {
        j["well_formedness_violation"] = {{"index", violation->index}, {"gcd", violation->gcd}};
        std::cout << (as_json ? j.dump(2) : "well_formed=false index=" +
                                                std::to_string(violation->index) +
                                                " gcd=" + std::to_string(violation->gcd))
                  << '\n';
        return ok;
    }
    WeightSystem ws = WeightSystem::canonicalize(raw);
    const Int d = degree.value_or(ws.sum() - 1);
    const HypersurfaceFamily fam{ws, d};
    j["weights"] = ws.vector();
    j["degree"] = d;
    j["kind"] = to_string(fam.kind());

    const QuasiSmoothReport rep = is_quasi_smooth(fam);
    ordered_json witnesses = ordered_json::array();
    std::optional<std::size_t> failing_vertex;
    for (std::size_t i = 0; i < ws.size(); ++i) {
        const auto &w = rep.vertex_witnesses[i];
        if (w)
            witnesses.push_back(monomial_text(vertex_monomial(ws.size(), i, *w)));
        else {
            witnesses.push_back(nullptr);
            if (!failing_vertex)
                failing_vertex = i;
        }
    }
    j["quasi_smooth"] = rep.verdict;
    j["vertex_witnesses"] = witnesses;
    j["failing_vertex"] = failing_vertex ? ordered_json(*failing_vertex) : ordered_json(nullptr);
    j["failing_subset"] = rep.failing_subset ? ordered_json(subset_indices(*rep.failing_subset))
                                             : ordered_json(nullptr);
    j["codim2_ok"] = rep.codim2_ok;

    const TigerKe flags = tiger_ke_flags(fam);
    j["tiger_free"] = flags.tiger_free;
    j["ke"] = flags.ke;
    if (rep.verdict) {
        const ClassifiedRecord rec = classify_family(fam);
        const ordered_json full = ordered_json::parse(record_to_jsonl(rec));
        j["terminal"] = rec.terminal;
        j["series"] = full["series"];
        j["basket"] = full["basket"];
    }

    if (as_json) {
        std::cout << j.dump(2) << '\n';
        return ok;
    }
    std::cout << "weights=" << text << " well_formed=true degree=" << d
              << " kind=" << to_string(fam.kind()) << '\n';
    std::cout << "quasi_smooth=" << (rep.verdict ? "true" : "false") << '\n';
    for (std::size_t i = 0; i < ws.size(); ++i)
        std::cout << "  P" << i << ": "
                  << (witnesses[i].is_null() ? "no x_i^m x_j of degree d (failing vertex)"
                                             : witnesses[i].get<std::string>())
                  << '\n';
    if (rep.failing_subset)
        std::cout << "  failing subset " << j["failing_subset"].dump() << '\n';
    if (!rep.codim2_ok)
        std::cout << "  codimension 2 condition fails at pair (" << rep.failing_pair->first << ", "
                  << rep.failing_pair->second << ")\n";
    if (rep.verdict) {
        std::cout << "terminal=" << j["terminal"].dump() << '\n';
        std::cout << "basket=" << j["basket"].dump() << '\n';
        std::cout << "series=" << j["series"].dump() << '\n';
    }
    std::cout << "tiger_free=" << j["tiger_free"].dump() << " ke=" << j["ke"].dump() << '\n';
    return ok;
}

int cmd_diff(const std::string &a_path, const std::string &b_path, bool as_json)
{
    const auto a = read_census(a_path);
    const auto b = read_census(b_path);
    const CensusDiff d = diff_census(a, b);
    auto list = [](const std::vector<HypersurfaceFamily> &fams) {
        ordered_json arr = ordered_json::array();
        for (const auto &f : fams)
            arr.push_back({{"weights", f.ws.vector()}, {"degree", f.degree}});
        return arr;
    };
    ordered_json j{{"only_in_a", d.only_a.size()},
                   {"only_in_b", d.only_b.size()},
                   {"common", d.common},
                   {"changed", d.changed.size()},
                   {"identical", d.identical()}};
    if (as_json) {
        j["only_in_a_list"] = list(d.only_a);
        j["only_in_b_list"] = list(d.only_b);
        j["changed_list"] = list(d.changed);
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "only_in_a=" << d.only_a.size() << " only_in_b=" << d.only_b.size()
                  << " common=" << d.common << " changed=" << d.changed.size() << '\n';
        for (const auto &f : d.only_a)
            std::cout << "< " << list({f})[0].dump() << '\n';
        for (const auto &f : d.only_b)
            std::cout << "> " << list({f})[0].dump() << '\n';
        for (const auto &f : d.changed)
            std::cout << "~ " << list({f})[0].dump() << '\n';
    }
    return d.identical() ? ok : mismatch;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Quasi-smooth weighted hypersurface census"};
    app.require_subcommand(1);
    app.fallthrough();
    int threads = 0;
    app.add_option("--threads", threads, "Worker threads, 0 = all cores")
        ->envname("WFANO_THREADS")
        ->check(CLI::NonNegativeNumber);

    auto *search = app.add_subcommand("search", "Run a search");
    search->require_subcommand(1);

    OutputOptions st_out;
    Int series_cap = 2000;
    std::string st_box;
    bool with_members = false;
    auto *structured = search->add_subcommand("structured", "Structured search over all cases");
    add_output_flags(structured, st_out);
    structured->add_option("--series-cap", series_cap, "Largest m0 evaluated on linear families");
    structured->add_option("--box", st_box,
                           "Restrict to a_i <= bounds[i], series members included");
    structured->add_flag("--series-members", with_members, "Also write series members");

    OutputOptions br_out;
    std::string br_bounds;
    std::string br_kind = "fano";
    bool no_prune = false;
    std::string checkpoint;
    auto *brute = search->add_subcommand("brute", "Exhaustive search in a box");
    add_output_flags(brute, br_out);
    brute->add_option("--bounds", br_bounds, "Comma separated per-weight maxima")->required();
    brute->add_option("--kind", br_kind, "fano or cy")->check(CLI::IsMember({"fano", "cy"}));
    brute->add_flag("--no-prune", no_prune, "Run the last weight over its full range");
    brute->add_option("--checkpoint", checkpoint, "Journal directory for resumable runs");

    std::string check_weights;
    std::optional<Int> check_degree;
    bool check_json = false;
    auto *check = app.add_subcommand("check", "Report on one weight system");
    check->add_option("weights", check_weights, "Comma separated weights")->required();
    check->add_option("--degree", check_degree, "Degree (default: sum - 1)");
    check->add_flag("--json", check_json, "Machine-readable report");

    std::string diff_a, diff_b;
    bool diff_json = false;
    auto *diff = app.add_subcommand("diff", "Compare two census files as sets");
    diff->add_option("a", diff_a)->required();
    diff->add_option("b", diff_b)->required();
    diff->add_flag("--json", diff_json, "Machine-readable report with lists");

    OutputOptions cl_out;
    std::string cl_input;
    auto *classify = app.add_subcommand("classify", "Recompute the classification fields");
    add_output_flags(classify, cl_out);
    classify->add_option("--input", cl_input, "Census JSONL")->required();

    Int triple_cap = 200;
    auto *series = app.add_subcommand("series", "Series data");
    auto *enumerate = series->add_subcommand("enumerate", "List the series triples b");
    series->require_subcommand(1);
    enumerate->add_option("--cap", triple_cap, "Largest b2 searched");

    OutputOptions cy_out;
    int cy_dim = 3;
    Int cy_max = 50;
    auto *cy = app.add_subcommand("cy", "Calabi-Yau weight systems");
    add_output_flags(cy, cy_out);
    cy->add_option("--dim", cy_dim, "Ambient dimension n")->check(CLI::Range(2, 31));
    cy->add_option("--max-weight", cy_max, "Bound on every weight")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : usage;
    }

    try {
        if (*structured) {
            StructuredSearchOptions opt;
            opt.series_cap = series_cap;
            opt.threads = threads;
            const StructuredCensus c = run_structured_search(opt);
            std::vector<HypersurfaceFamily> fams = c.sporadic;
            ordered_json summary{{"search", "structured"},
                                 {"sporadic", c.sporadic.size()},
                                 {"series", c.series.size()},
                                 {"series_members", c.series_members.size()},
                                 {"series_cap", series_cap},
                                 {"threads", threads}};
            if (with_members)
                fams.insert(fams.end(), c.series_members.begin(), c.series_members.end());
            if (!st_box.empty()) {
                const std::vector<Int> bounds = parse_weights(st_box);
                fams = box_restriction(c, bounds);
                summary["box"] = bounds;
            }
            const auto &dg = c.diagnostics;
            summary["diagnostics"] = {{"configurations", dg.configurations},
                                      {"finite_branch", dg.finite_branch},
                                      {"series_branch", dg.series_branch},
                                      {"singular_branch", dg.singular_branch},
                                      {"raw_solutions", dg.raw_solutions},
                                      {"distinct_solutions", dg.distinct_solutions},
                                      {"distinct_well_formed", dg.distinct_well_formed},
                                      {"distinct_quasi_smooth", dg.distinct_quasi_smooth},
                                      {"persistent_pieces", dg.persistent_pieces},
                                      {"non_well_formed_pieces", dg.non_well_formed_pieces},
                                      {"case23_candidates", dg.case23_candidates},
                                      {"case23_new", dg.case23_new},
                                      {"max_transient_m", dg.max_transient_m}};
            ordered_json triples = ordered_json::array();
            for (const SeriesFamily &s : c.series)
                triples.push_back(s.b);
            summary["series_triples"] = triples;
            emit(st_out, classify_all(fams, threads), summary);
            return ok;
        }
        if (*brute) {
            BruteOptions opt;
            opt.bounds = parse_weights(br_bounds);
            opt.kind = *family_kind_from_string(br_kind);
            opt.prune = !no_prune;
            opt.threads = threads;
            if (!checkpoint.empty())
                opt.checkpoint_dir = checkpoint;
            const BruteResult r = brute_search(opt);
            ordered_json stages = ordered_json::object();
            for (const PruneStage &p : prune_order())
                stages[p.name] = r.survivors[static_cast<std::size_t>(p.stage)];
            ordered_json summary{{"search", "brute"},
                                 {"quasi_smooth", r.families.size()},
                                 {"bounds", opt.bounds},
                                 {"kind", br_kind},
                                 {"prune", opt.prune},
                                 {"threads", threads},
                                 {"prefixes", r.prefixes},
                                 {"prefixes_resumed", r.prefixes_resumed},
                                 {"survivors", stages}};
            emit(br_out, classify_all(r.families, threads), summary);
            return ok;
        }
        if (*check)
            return cmd_check(check_weights, check_degree, check_json);
        if (*diff)
            return cmd_diff(diff_a, diff_b, diff_json);
        if (*classify) {
            std::vector<HypersurfaceFamily> fams;
            for (const ClassifiedRecord &r : read_census(cl_input))
                fams.push_back(r.family);
            ordered_json summary{{"input", cl_input}, {"threads", threads}};
            emit(cl_out, classify_all(fams, threads), summary);
            return ok;
        }
        if (*enumerate) {
            for (const auto &b : enumerate_48_triples(triple_cap))
                std::cout << ordered_json{{"b", b}}.dump() << '\n';
            return ok;
        }
        if (*cy) {
            const CySearchResult r = cy_search(cy_dim, cy_max, threads);
            ordered_json summary{{"search", "cy"},
                                 {"dim", cy_dim},
                                 {"max_weight", r.max_weight},
                                 {"families", r.families.size()},
                                 {"reducible_rejected", r.reducible_rejected},
                                 {"threads", threads}};
            emit(cy_out, classify_all(r.families, threads), summary);
            return ok;
        }
    } catch (const UsageError &e) {
        std::cerr << ordered_json{{"error", "usage"}, {"message", e.what()}}.dump() << '\n';
        return usage;
    } catch (const std::invalid_argument &e) {
        std::cerr << ordered_json{{"error", "usage"}, {"message", e.what()}}.dump() << '\n';
        return usage;
    } catch (const std::exception &e) {
        std::cerr << ordered_json{{"error", "internal"}, {"message", e.what()}}.dump() << '\n';
        return invariant;
    }
    return usage;
}
