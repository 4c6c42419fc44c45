#pragma once

#include "wfano/classify.hpp"

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wfano {

class CensusFormatError : public std::runtime_error {
public:
    CensusFormatError(std::size_t line, const std::string &what);

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// One JSON object per line, fields in the order weights, degree, kind,
/// quasi_smooth, terminal, tiger_free, ke, series, basket.
std::string record_to_jsonl(const ClassifiedRecord &rec);
ClassifiedRecord record_from_jsonl(const std::string &line);

void write_jsonl(std::ostream &out, std::span<const ClassifiedRecord> records);
/// Blank lines are skipped. Throws CensusFormatError with a 1-based line.
std::vector<ClassifiedRecord> read_jsonl(std::istream &in);

void write_csv(std::ostream &out, std::span<const ClassifiedRecord> records);

/// Ascending by weights, then degree.
void sort_census(std::vector<ClassifiedRecord> &records);

struct CensusCounts {
    std::size_t records = 0;
    std::size_t quasi_smooth = 0;
    std::size_t terminal = 0;
    std::size_t tiger_free = 0;
    std::size_t ke = 0;
    std::size_t series_members = 0;
};

CensusCounts count_flags(std::span<const ClassifiedRecord> records);

struct CensusDiff {
    std::vector<HypersurfaceFamily> only_a;
    std::vector<HypersurfaceFamily> only_b;
    std::size_t common = 0;
    /// Families present in both whose classification fields differ.
    std::vector<HypersurfaceFamily> changed;

    bool identical() const { return only_a.empty() && only_b.empty() && changed.empty(); }
};

/// Compares the two lists as sets of families.
CensusDiff diff_census(std::span<const ClassifiedRecord> a, std::span<const ClassifiedRecord> b);

} // namespace wfano
