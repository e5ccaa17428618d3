#include "laurel/feature_table.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "laurel/errors.hpp"

namespace laurel {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

template <typename T>
T parse_field(std::string_view text, std::size_t line_no) {
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw FormatError("line " + std::to_string(line_no) + ": cannot parse field '" +
                          std::string(text) + "'");
    return value;
}

template <typename Row, typename Parse>
std::vector<Row> read_csv(std::istream& in, std::string_view header, std::size_t columns,
                          Parse parse) {
    std::string line;
    if (!std::getline(in, line))
        throw FormatError("empty CSV file");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != header)
        throw FormatError("unexpected CSV header '" + line + "'");
    std::vector<Row> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto fields = split(line, ',');
        if (fields.size() != columns)
            throw FormatError("line " + std::to_string(line_no) + ": expected " +
                              std::to_string(columns) + " fields");
        rows.push_back(parse(fields, line_no));
    }
    return rows;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path.string());
    return in;
}

} // namespace

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

void write_feature_csv(std::ostream& out, std::span<const FeatureRow> rows) {
    out << kFeatureCsvHeader << '\n';
    for (const auto& r : rows) {
        const auto& f = r.features;
        out << r.paper_id << ',' << format_double(f.avg_out_degree) << ',' << f.diameter << ','
            << format_double(f.density) << ',' << format_double(f.transitivity) << ','
            << format_double(f.avg_local_clustering) << ',' << r.label << ',' << r.year << '\n';
    }
}

std::vector<FeatureRow> read_feature_csv(std::istream& in) {
    return read_csv<FeatureRow>(in, kFeatureCsvHeader, 8, [](const auto& f, std::size_t ln) {
        FeatureRow r;
        r.paper_id = parse_field<PaperId>(f[0], ln);
        r.features.avg_out_degree = parse_field<double>(f[1], ln);
        r.features.diameter = parse_field<std::uint32_t>(f[2], ln);
        r.features.density = parse_field<double>(f[3], ln);
        r.features.transitivity = parse_field<double>(f[4], ln);
        r.features.avg_local_clustering = parse_field<double>(f[5], ln);
        r.label = parse_field<int>(f[6], ln);
        r.year = parse_field<std::int32_t>(f[7], ln);
        return r;
    });
}

void save_feature_csv(const std::filesystem::path& path, std::span<const FeatureRow> rows) {
    auto out = open_out(path);
    write_feature_csv(out, rows);
}

std::vector<FeatureRow> load_feature_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_feature_csv(in);
}

void write_score_csv(std::ostream& out, std::span<const ScoreRow> rows) {
    out << kScoreCsvHeader << '\n';
    for (const auto& r : rows)
        out << r.paper_id << ',' << r.label << ',' << format_double(r.phi) << ','
            << format_double(r.theta) << '\n';
}

std::vector<ScoreRow> read_score_csv(std::istream& in) {
    return read_csv<ScoreRow>(in, kScoreCsvHeader, 4, [](const auto& f, std::size_t ln) {
        ScoreRow r;
        r.paper_id = parse_field<PaperId>(f[0], ln);
        r.label = parse_field<int>(f[1], ln);
        r.phi = parse_field<double>(f[2], ln);
        r.theta = parse_field<double>(f[3], ln);
        return r;
    });
}

void save_score_csv(const std::filesystem::path& path, std::span<const ScoreRow> rows) {
    auto out = open_out(path);
    write_score_csv(out, rows);
}

std::vector<ScoreRow> load_score_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_score_csv(in);
}

} // namespace laurel
