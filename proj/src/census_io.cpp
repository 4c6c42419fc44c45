#include "wfano/census_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>

namespace wfano {

using ordered_json = nlohmann::ordered_json;

namespace {

LocationKind location_from_string(const std::string &s)
{
    for (LocationKind k : {LocationKind::vertex, LocationKind::edge_points,
                           LocationKind::non_isolated_curve})
        if (s == to_string(k))
            return k;
    throw std::invalid_argument("unknown location '" + s + "'");
}

ordered_json to_json(const ClassifiedRecord &rec)
{
    ordered_json j;
    j["weights"] = rec.family.ws.vector();
    j["degree"] = rec.family.degree;
    j["kind"] = to_string(rec.family.kind());
    j["quasi_smooth"] = rec.quasi_smooth;
    j["terminal"] = rec.terminal;
    j["tiger_free"] = rec.tiger_free;
    j["ke"] = rec.ke;
    if (rec.series) {
        ordered_json s;
        s["b"] = rec.series->b;
        s["k"] = rec.series->k;
        j["series"] = s;
    } else {
        j["series"] = nullptr;
    }
    ordered_json basket = ordered_json::array();
    for (const QuotientSingularity &q : rec.basket) {
        ordered_json e;
        e["r"] = q.r;
        e["w"] = q.w;
        e["location"] = to_string(q.location);
        e["indices"] = q.indices;
        e["count"] = q.count;
        basket.push_back(e);
    }
    j["basket"] = basket;
    return j;
}

ClassifiedRecord from_json(const ordered_json &j)
{
    const auto weights = j.at("weights").get<std::vector<Int>>();
    ClassifiedRecord rec{{WeightSystem::canonicalize(weights), j.at("degree").get<Int>()}};
    if (!std::is_sorted(weights.begin(), weights.end()))
        throw std::invalid_argument("weights must be ascending");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind != to_string(rec.family.kind()))
        throw std::invalid_argument("kind '" + kind + "' does not match the degree");
    rec.quasi_smooth = j.at("quasi_smooth").get<bool>();
    rec.terminal = j.at("terminal").get<bool>();
    rec.tiger_free = j.at("tiger_free").get<bool>();
    rec.ke = j.at("ke").get<bool>();
    const ordered_json &s = j.at("series");
    if (!s.is_null())
        rec.series = SeriesMembership{s.at("b").get<std::array<Int, 3>>(), s.at("k").get<Int>()};
    for (const ordered_json &e : j.at("basket"))
        rec.basket.push_back({e.at("r").get<Int>(), e.at("w").get<std::vector<Int>>(),
                              location_from_string(e.at("location").get<std::string>()),
                              e.at("indices").get<std::vector<std::size_t>>(),
                              e.at("count").get<Int>()});
    return rec;
}

} // namespace

CensusFormatError::CensusFormatError(std::size_t line, const std::string &what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
{
}

std::string record_to_jsonl(const ClassifiedRecord &rec)
{
    return to_json(rec).dump();
}

ClassifiedRecord record_from_jsonl(const std::string &line)
{
    return from_json(ordered_json::parse(line));
}

void write_jsonl(std::ostream &out, std::span<const ClassifiedRecord> records)
{
    for (const ClassifiedRecord &rec : records)
        out << record_to_jsonl(rec) << '\n';
}

std::vector<ClassifiedRecord> read_jsonl(std::istream &in)
{
    std::vector<ClassifiedRecord> out;
    std::string line;
    for (std::size_t n = 1; std::getline(in, line); ++n) {
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        try {
            out.push_back(record_from_jsonl(line));
        } catch (const std::exception &e) {
            throw CensusFormatError(n, e.what());
        }
    }
    return out;
}

void write_csv(std::ostream &out, std::span<const ClassifiedRecord> records)
{
    out << "weights,degree,kind,quasi_smooth,terminal,tiger_free,ke,series_b,series_k,basket\n";
    for (const ClassifiedRecord &rec : records) {
        auto join = [](auto &&values, char sep) {
            std::string s;
            for (auto v : values) {
                if (!s.empty())
                    s += sep;
                s += std::to_string(v);
            }
            return s;
        };
        std::string basket;
        for (const QuotientSingularity &q : rec.basket) {
            if (!basket.empty())
                basket += ';';
            basket += std::to_string(q.count) + "x1/" + std::to_string(q.r) + "(" +
                      join(q.w, ' ') + ")@" + to_string(q.location);
        }
        out << '"' << join(rec.family.ws.weights(), ' ') << "\"," << rec.family.degree << ','
            << to_string(rec.family.kind()) << ',' << rec.quasi_smooth << ',' << rec.terminal
            << ',' << rec.tiger_free << ',' << rec.ke << ',';
        if (rec.series)
            out << '"' << join(rec.series->b, ' ') << "\"," << rec.series->k;
        else
            out << ',';
        out << ",\"" << basket << "\"\n";
    }
}

void sort_census(std::vector<ClassifiedRecord> &records)
{
    std::sort(records.begin(), records.end(),
              [](const ClassifiedRecord &x, const ClassifiedRecord &y) { return x.family < y.family; });
}

CensusCounts count_flags(std::span<const ClassifiedRecord> records)
{
    CensusCounts c;
    for (const ClassifiedRecord &rec : records) {
        ++c.records;
        c.quasi_smooth += rec.quasi_smooth;
        c.terminal += rec.terminal;
        c.tiger_free += rec.tiger_free;
        c.ke += rec.ke;
        c.series_members += rec.series.has_value();
    }
    return c;
}

CensusDiff diff_census(std::span<const ClassifiedRecord> a, std::span<const ClassifiedRecord> b)
{
    std::map<HypersurfaceFamily, const ClassifiedRecord *> in_b;
    for (const ClassifiedRecord &rec : b)
        in_b.emplace(rec.family, &rec);
    CensusDiff d;
    std::map<HypersurfaceFamily, bool> seen_a;
    for (const ClassifiedRecord &rec : a) {
        if (!seen_a.emplace(rec.family, true).second)
            continue;
        auto it = in_b.find(rec.family);
        if (it == in_b.end()) {
            d.only_a.push_back(rec.family);
            continue;
        }
        ++d.common;
        if (!(*it->second == rec))
            d.changed.push_back(rec.family);
    }
    for (const auto &[fam, rec] : in_b)
        if (!seen_a.count(fam))
            d.only_b.push_back(fam);
    std::sort(d.only_a.begin(), d.only_a.end());
    std::sort(d.only_b.begin(), d.only_b.end());
    std::sort(d.changed.begin(), d.changed.end());
    return d;
}

} // namespace wfano
