#include "eqrand/regions.hpp"

#include "eqrand/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace eqrand {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

// Splits one CSV record; double quotes group fields and "" escapes a quote.
std::vector<std::string> split_csv(std::string_view line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                field += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(trim(field));
            field.clear();
        } else {
            field += ch;
        }
    }
    fields.push_back(trim(field));
    return fields;
}

// Nonnegative integral count; accepts "12" and "12.0".
std::optional<std::int64_t> parse_count(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::int64_t value = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec == std::errc() && end == s.data() + s.size()) return value;
    double d = 0.0;
    const auto [dend, dec] = std::from_chars(s.data(), s.data() + s.size(), d);
    if (dec != std::errc() || dend != s.data() + s.size() || !std::isfinite(d) ||
        d != std::floor(d) || std::fabs(d) > 9.0e15)
        return std::nullopt;
    return static_cast<std::int64_t>(d);
}

std::size_t column_index(const std::vector<std::string>& header, const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw SchemaError(name, "input is missing required column '" + name + "'");
}

bool is_skippable(const std::string& line) {
    const std::string t = trim(line);
    return t.empty() || t.front() == '#';
}

}  // namespace

ColumnMapping parse_column_mapping(std::string_view spec) {
    ColumnMapping m;
    std::stringstream ss{std::string(spec)};
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (trim(item).empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ConfigError("column mapping entry '" + item + "' lacks '='");
        const std::string key = trim(item.substr(0, eq));
        const std::string value = trim(item.substr(eq + 1));
        if (value.empty()) throw ConfigError("column mapping for '" + key + "' is empty");
        if (key == "region")
            m.region = value;
        else if (key == "confirmed")
            m.confirmed = value;
        else if (key == "recovered")
            m.recovered = value;
        else
            throw ConfigError("unknown column mapping key '" + key + "'");
    }
    return m;
}

RegionLoad parse_regions(std::istream& in, const ColumnMapping& columns) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_skippable(line)) continue;
        header = split_csv(line);
        break;
    }
    if (header.empty()) throw SchemaError(columns.region, "input has no header row");
    const std::size_t i_region = column_index(header, columns.region);
    const std::size_t i_confirmed = column_index(header, columns.confirmed);
    const std::size_t i_recovered = column_index(header, columns.recovered);

    RegionLoad out;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_skippable(line)) continue;
        const auto fields = split_csv(line);
        auto field = [&](std::size_t i) { return i < fields.size() ? fields[i] : std::string(); };
        const std::string region = field(i_region);
        const std::string confirmed_s = field(i_confirmed);
        const std::string recovered_s = field(i_recovered);
        auto drop = [&](std::string reason) { out.dropped.push_back({line_no, region, std::move(reason)}); };

        if (confirmed_s.empty()) { drop("missing confirmed"); continue; }
        if (recovered_s.empty()) { drop("missing recovered"); continue; }
        const auto confirmed = parse_count(confirmed_s);
        if (!confirmed) { drop("non-numeric confirmed"); continue; }
        const auto recovered = parse_count(recovered_s);
        if (!recovered) { drop("non-numeric recovered"); continue; }
        if (*confirmed < 0 || *recovered < 0) { drop("negative count"); continue; }
        if (*confirmed == 0) { drop("zero confirmed"); continue; }
        if (*recovered > *confirmed) { drop("recoveries exceed confirmed"); continue; }

        RegionRecord r;
        r.region = region;
        r.confirmed = *confirmed;
        r.recovered = *recovered;
        r.rate = static_cast<double>(r.recovered) / static_cast<double>(r.confirmed);
        out.records.push_back(std::move(r));
    }
    return out;
}

RegionLoad load_regions(const std::filesystem::path& path, const ColumnMapping& columns) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open region file '" + path.string() + "'");
    return parse_regions(in, columns);
}

void write_regions(std::ostream& out, std::span<const RegionRecord> records) {
    out << "region,confirmed,recovered\n";
    for (const auto& r : records) {
        const bool quote = r.region.find_first_of(",\"") != std::string::npos;
        if (quote) {
            out << '"';
            for (char ch : r.region) out << (ch == '"' ? "\"\"" : std::string(1, ch));
            out << '"';
        } else {
            out << r.region;
        }
        out << ',' << r.confirmed << ',' << r.recovered << '\n';
    }
}

HypothesisFamily build_family(std::span<const RegionRecord> records, double theta1, double theta2) {
    if (records.empty()) throw DomainError("region list is empty");
    if (!(theta1 > 0.0 && theta1 < theta2 && theta2 < 1.0))
        throw DomainError("bounds must satisfy 0 < theta1 < theta2 < 1");
    std::vector<HypothesisConfig> configs;
    configs.reserve(records.size());
    for (const auto& r : records) configs.push_back({r.confirmed, r.rate, theta1, theta2});
    return make_family(std::move(configs));
}

}  // namespace eqrand
