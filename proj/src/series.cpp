#include "demandcast/series.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string_view>
#include <utility>

namespace demandcast {

namespace {

constexpr std::string_view kHeader = "series_id,date,count";

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

[[noreturn]] void fail_line(std::size_t line, const std::string& what)
{
    throw ParseError("line " + std::to_string(line) + ": " + what);
}

bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (c < '0' || c > '9')
            return false;
    return true;
}

std::chrono::sys_days parse_date(std::string_view s, std::size_t line)
{
    if (s.size() != 10 || s[4] != '-' || s[7] != '-' || !all_digits(s.substr(0, 4))
        || !all_digits(s.substr(5, 2)) || !all_digits(s.substr(8, 2)))
        fail_line(line, "date must be YYYY-MM-DD, got '" + std::string(s) + "'");
    int y = 0, mo = 0, d = 0;
    std::from_chars(s.data(), s.data() + 4, y);
    std::from_chars(s.data() + 5, s.data() + 7, mo);
    std::from_chars(s.data() + 8, s.data() + 10, d);
    std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(mo)},
                                    std::chrono::day{unsigned(d)}};
    if (!ymd.ok())
        fail_line(line, "'" + std::string(s) + "' is not a calendar date");
    return std::chrono::sys_days(ymd);
}

std::int64_t parse_count(std::string_view s, std::size_t line)
{
    if (s.empty())
        fail_line(line, "empty count");
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
        fail_line(line, "count must be a base-10 integer, got '" + std::string(s) + "'");
    if (value < 0)
        fail_line(line, "count must be non-negative, got " + std::string(s));
    return value;
}

} // namespace

void validate_series(const CountSeries& series)
{
    if (series.dates.size() != series.counts.size())
        throw ParseError("series " + series.id + ": dates and counts lengths differ");
    if (series.counts.size() < 3)
        throw ParseError("series " + series.id + ": needs at least 3 points, has "
                         + std::to_string(series.counts.size()));
    for (std::size_t i = 1; i < series.dates.size(); ++i) {
        auto gap = series.dates[i] - series.dates[i - 1];
        if (gap == std::chrono::days{0})
            throw ParseError("series " + series.id + ": duplicate date "
                             + format_date(series.dates[i]));
        if (gap != std::chrono::days{7})
            throw ParseError("series " + series.id + ": weekly cadence broken between "
                             + format_date(series.dates[i - 1]) + " and "
                             + format_date(series.dates[i]));
    }
    for (std::int64_t c : series.counts)
        if (c < 0)
            throw ParseError("series " + series.id + ": negative count");
}

std::vector<CountSeries> parse_series_csv(const std::string& content)
{
    std::istringstream in(content);
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line))
        throw ParseError("empty input");
    ++line_no;
    if (trim(line) != kHeader)
        fail_line(line_no, "expected header '" + std::string(kHeader) + "'");

    struct Row {
        std::chrono::sys_days date;
        std::int64_t count;
        std::size_t line;
    };
    std::map<std::string, std::vector<Row>> groups;

    while (std::getline(in, line)) {
        ++line_no;
        std::string_view row = trim(line);
        if (row.empty())
            continue;
        auto c1 = row.find(',');
        auto c2 = c1 == std::string_view::npos ? std::string_view::npos : row.find(',', c1 + 1);
        if (c1 == std::string_view::npos || c2 == std::string_view::npos
            || row.find(',', c2 + 1) != std::string_view::npos)
            fail_line(line_no, "expected 3 comma-separated fields");
        std::string id(trim(row.substr(0, c1)));
        if (id.empty())
            fail_line(line_no, "empty series_id");
        auto date = parse_date(trim(row.substr(c1 + 1, c2 - c1 - 1)), line_no);
        auto count = parse_count(trim(row.substr(c2 + 1)), line_no);
        groups[id].push_back(Row{date, count, line_no});
    }

    std::vector<CountSeries> out;
    out.reserve(groups.size());
    for (auto& [id, rows] : groups) {
        std::stable_sort(rows.begin(), rows.end(),
                         [](const Row& a, const Row& b) { return a.date < b.date; });
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (rows[i].date == rows[i - 1].date)
                fail_line(rows[i].line, "duplicate date " + format_date(rows[i].date)
                                            + " in series " + id);
        CountSeries s;
        s.id = id;
        s.dates.reserve(rows.size());
        s.counts.reserve(rows.size());
        for (const Row& r : rows) {
            s.dates.push_back(r.date);
            s.counts.push_back(r.count);
        }
        validate_series(s);
        out.push_back(std::move(s));
    }
    if (out.empty())
        throw ParseError("no data rows");
    return out;
}

std::string serialize_series_csv(const std::vector<CountSeries>& series)
{
    std::string out(kHeader);
    out += '\n';
    for (const CountSeries& s : series) {
        for (std::size_t i = 0; i < s.counts.size(); ++i) {
            out += s.id;
            out += ',';
            out += format_date(s.dates[i]);
            out += ',';
            out += std::to_string(s.counts[i]);
            out += '\n';
        }
    }
    return out;
}

std::vector<CountSeries> load_series_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_series_csv(buf.str());
}

std::string format_date(std::chrono::sys_days day)
{
    std::chrono::year_month_day ymd(day);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()),
                  unsigned(ymd.day()));
    return buf;
}

} // namespace demandcast
