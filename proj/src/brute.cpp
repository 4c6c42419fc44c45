#include "wfano/brute.hpp"

#include "parallel.hpp"
#include "wfano/qsmooth.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace wfano {

namespace {

using Buffer = std::array<Int, max_weights>;

struct Context {
    std::vector<Int> bounds;
    std::size_t size;
    Int shift; // d = sum + shift
    bool prune;
};

struct PrefixOutput {
    std::vector<Int> flat; // accepted tuples, stride = size
    std::array<long long, brute_stage_count> survivors{};
};

// Vertex condition for a sorted tuple. Weight 1 vertices are automatic and
// equal neighbouring weights give the same condition, so both are skipped.
bool vertex_sorted(const Int *w, std::size_t size, Int d)
{
    for (std::size_t i = size; i-- > 0;) {
        const Int a = w[i];
        if (a == 1 || (i + 1 < size && w[i + 1] == a))
            continue;
        bool ok = false;
        for (std::size_t j = 0; j < size && !ok; ++j) {
            const Int rest = d - w[j];
            ok = rest >= 0 && rest % a == 0;
        }
        if (!ok)
            return false;
    }
    return true;
}

// gcd of the first n weights with index i left out, for i < n, and of all
// of them. The tuple with last weight a is well formed iff total == 1 and
// gcd(excluded[i], a) == 1 for every i.
struct PrefixGcds {
    Buffer excluded;
    Int total;

    void compute(const Int *w, std::size_t n)
    {
        Buffer suffix;
        suffix[n] = 0;
        for (std::size_t i = n; i-- > 0;)
            suffix[i] = std::gcd(suffix[i + 1], w[i]);
        Int prefix = 0;
        for (std::size_t i = 0; i < n; ++i) {
            excluded[i] = std::gcd(prefix, suffix[i + 1]);
            prefix = std::gcd(prefix, w[i]);
        }
        total = prefix;
    }

    bool well_formed_with(Int a, std::size_t n) const
    {
        if (total != 1)
            return false;
        for (std::size_t i = 0; i < n; ++i)
            if (excluded[i] != 1 && std::gcd(excluded[i], a) != 1)
                return false;
        return true;
    }
};

void test_tuple(const Context &ctx, const Int *w, Int sum, const PrefixGcds &gcds,
                PrefixOutput &out)
{
    std::span<const Int> span(w, ctx.size);
    const std::size_t n = ctx.size - 1;
    const Int d = sum + ctx.shift;
    ++out.survivors[0];
    if (!gcds.well_formed_with(w[n], n))
        return;
    ++out.survivors[1];
    if (!vertex_sorted(w, ctx.size, d))
        return;
    ++out.survivors[2];
    if (!kernel::codim2_condition(span, d))
        return;
    ++out.survivors[3];
    if (!kernel::subset_condition(span, d))
        return;
    ++out.survivors[4];
    out.flat.insert(out.flat.end(), w, w + ctx.size);
}

// Values of the last weight allowed by the vertex condition at its own
// vertex: m a_n + a_j = s + a_n + shift with s the sum of the others.
// Returns false if that condition leaves the last weight unconstrained.
bool last_weight_candidates(const Context &ctx, const Int *w, Int s, Int lo, Int hi,
                            std::vector<Int> &out)
{
    out.clear();
    const std::size_t n = ctx.size - 1;
    auto add_divisors = [&](Int v) {
        // a_n = v / q with a_n >= lo
        for (Int q = 1; q <= v / lo; ++q)
            if (v % q == 0 && v / q <= hi)
                out.push_back(v / q);
    };
    const Int base = s + ctx.shift;
    if (base <= 0)
        return false;
    add_divisors(base);
    for (std::size_t j = 0; j < n; ++j) {
        const Int v = base - w[j];
        if (v == 0)
            return false;
        if (v > 0)
            add_divisors(v);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return true;
}

void descend(const Context &ctx, Buffer &w, std::size_t pos, Int sum, PrefixOutput &out,
             std::vector<Int> &scratch)
{
    const std::size_t n = ctx.size - 1;
    const Int lo = w[pos - 1];
    if (pos < n) {
        for (Int a = lo; a <= ctx.bounds[pos]; ++a) {
            w[pos] = a;
            descend(ctx, w, pos + 1, sum + a, out, scratch);
        }
        return;
    }
    const Int hi = ctx.bounds[n];
    PrefixGcds gcds;
    gcds.compute(w.data(), n);
    if (ctx.prune && last_weight_candidates(ctx, w.data(), sum, lo, hi, scratch)) {
        for (Int a : scratch) {
            w[n] = a;
            test_tuple(ctx, w.data(), sum + a, gcds, out);
        }
        return;
    }
    for (Int a = lo; a <= hi; ++a) {
        w[n] = a;
        test_tuple(ctx, w.data(), sum + a, gcds, out);
    }
}

PrefixOutput run_prefix(const Context &ctx, Int a0, Int a1)
{
    PrefixOutput out;
    Buffer w{};
    w[0] = a0;
    w[1] = a1;
    std::vector<Int> scratch;
    if (ctx.size == 2)
        descend(ctx, w, 1, a0, out, scratch);
    else
        descend(ctx, w, 2, a0 + a1, out, scratch);
    return out;
}

nlohmann::json journal_header(const BruteOptions &opt)
{
    return {{"bounds", opt.bounds}, {"kind", to_string(opt.kind)}, {"prune", opt.prune}};
}

class Journal {
public:
    Journal(const std::filesystem::path &dir, const BruteOptions &opt)
    {
        std::filesystem::create_directories(dir);
        path_ = dir / "brute.journal";
        const nlohmann::json header = journal_header(opt);
        if (std::filesystem::exists(path_)) {
            std::ifstream in(path_);
            std::string line;
            if (std::getline(in, line) && !line.empty()) {
                if (nlohmann::json::parse(line) != header)
                    throw std::runtime_error("checkpoint journal " + path_.string() +
                                             " belongs to a different run");
                while (std::getline(in, line)) {
                    nlohmann::json rec = nlohmann::json::parse(line, nullptr, false);
                    if (rec.is_discarded())
                        break; // torn final line from an interrupted run
                    PrefixOutput po;
                    for (const auto &t : rec.at("families"))
                        for (Int a : t)
                            po.flat.push_back(a);
                    auto surv = rec.at("survivors").get<std::vector<long long>>();
                    std::copy(surv.begin(), surv.end(), po.survivors.begin());
                    done_.emplace(rec.at("prefix").get<std::pair<Int, Int>>(), std::move(po));
                }
            }
        }
        // Rewrite so that a torn line never precedes new records.
        std::ofstream outf(path_, std::ios::trunc);
        outf << header.dump() << '\n';
        for (const auto &[prefix, po] : done_)
            outf << record(prefix, po, opt.bounds.size()).dump() << '\n';
        size_ = opt.bounds.size();
    }

    const PrefixOutput *find(Int a0, Int a1) const
    {
        auto it = done_.find({a0, a1});
        return it == done_.end() ? nullptr : &it->second;
    }

    void append(Int a0, Int a1, const PrefixOutput &po)
    {
        const std::string line = record({a0, a1}, po, size_).dump();
        std::lock_guard<std::mutex> guard(lock_);
        std::ofstream out(path_, std::ios::app);
        out << line << '\n';
    }

private:
    static nlohmann::json record(std::pair<Int, Int> prefix, const PrefixOutput &po,
                                 std::size_t size)
    {
        nlohmann::json fams = nlohmann::json::array();
        for (std::size_t i = 0; i < po.flat.size(); i += size)
            fams.push_back(std::vector<Int>(po.flat.begin() + i, po.flat.begin() + i + size));
        return {{"prefix", {prefix.first, prefix.second}},
                {"survivors", po.survivors},
                {"families", fams}};
    }

    std::filesystem::path path_;
    std::map<std::pair<Int, Int>, PrefixOutput> done_;
    std::mutex lock_;
    std::size_t size_ = 0;
};

} // namespace

std::vector<PruneStage> prune_order()
{
    return {
        {BruteStage::ascending, "ascending",
         "a_0 <= ... <= a_n inside the box; with pruning the last weight only takes values "
         "allowed by the vertex condition at its own vertex"},
        {BruteStage::well_formed, "well_formed", "any n of the n + 1 weights are coprime"},
        {BruteStage::vertex, "vertex", "every vertex admits x_i^m x_j of degree d"},
        {BruteStage::codim2, "codim2",
         "weights outside a pair with a common factor reach d on their own"},
        {BruteStage::subset, "subset", "|T(I)| >= |I| for every nonempty index subset I"},
    };
}

Int kind_degree(FamilyKind kind, Int weight_sum)
{
    switch (kind) {
    case FamilyKind::fano:
        return weight_sum - 1;
    case FamilyKind::cy:
        return weight_sum;
    default:
        throw std::invalid_argument("brute search supports the fano and cy kinds only");
    }
}

BruteResult brute_search(const BruteOptions &opt)
{
    const std::size_t size = opt.bounds.size();
    if (size < 2 || size > max_weights)
        throw std::invalid_argument("brute search needs between 2 and 32 bounds");
    for (Int b : opt.bounds)
        if (b < 1)
            throw std::invalid_argument("bounds must be positive");
    const Context ctx{opt.bounds, size, kind_degree(opt.kind, 0), opt.prune};

    std::vector<std::pair<Int, Int>> prefixes;
    for (Int a0 = 1; a0 <= opt.bounds[0]; ++a0) {
        if (size == 2) {
            prefixes.emplace_back(a0, a0);
            continue;
        }
        for (Int a1 = a0; a1 <= opt.bounds[1]; ++a1)
            prefixes.emplace_back(a0, a1);
    }

    std::optional<Journal> journal;
    if (opt.checkpoint_dir)
        journal.emplace(*opt.checkpoint_dir, opt);

    BruteResult result;
    result.prefixes = prefixes.size();
    std::vector<PrefixOutput> outputs(prefixes.size());
    std::vector<char> resumed(prefixes.size(), 0);
    detail::parallel_for(prefixes.size(), detail::resolve_threads(opt.threads), [&](std::size_t i) {
        const auto [a0, a1] = prefixes[i];
        if (journal) {
            if (const PrefixOutput *po = journal->find(a0, a1)) {
                outputs[i] = *po;
                resumed[i] = 1;
                return;
            }
        }
        outputs[i] = run_prefix(ctx, a0, a1);
        if (journal)
            journal->append(a0, a1, outputs[i]);
    });

    for (std::size_t i = 0; i < outputs.size(); ++i) {
        result.prefixes_resumed += resumed[i];
        for (std::size_t s = 0; s < brute_stage_count; ++s)
            result.survivors[s] += outputs[i].survivors[s];
        const std::vector<Int> &flat = outputs[i].flat;
        for (std::size_t k = 0; k < flat.size(); k += size) {
            std::span<const Int> w(flat.data() + k, size);
            WeightSystem ws = WeightSystem::canonicalize(w);
            Int sum = ws.sum();
            result.families.push_back({std::move(ws), kind_degree(opt.kind, sum)});
        }
    }
    return result;
}

} // namespace wfano
