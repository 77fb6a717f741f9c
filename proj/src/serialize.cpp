#include "eqrand/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace eqrand {

namespace {

// JSON has no NaN; unselected methods become null.
nlohmann::ordered_json json_number(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

}  // namespace

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    // avoid "-0.000000" for tiny negatives
    if (std::string_view(buf) == "-0.000000") return "0.000000";
    return buf;
}

void write_provenance_csv(std::ostream& out, const Provenance& provenance) {
    for (const auto& [key, value] : provenance.items()) {
        out << "# " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
            << '\n';
    }
}

void write_series_csv(std::ostream& out, const CurveSeries& series, const Provenance& provenance) {
    write_provenance_csv(out, provenance);
    const bool with_se = !series.ump_stderr.empty();
    const bool with_flag = !series.null_side.empty();
    out << (series.x_label.empty() ? "x" : series.x_label) << ",ump,rand2";
    if (with_se) out << ",ump_stderr,rand2_stderr";
    if (with_flag) out << ",null_side";
    out << '\n';
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << format_number(series.x[i]) << ',' << format_number(series.ump[i]) << ','
            << format_number(series.rand2[i]);
        if (with_se)
            out << ',' << format_number(series.ump_stderr[i]) << ','
                << format_number(series.rand2_stderr[i]);
        if (with_flag) out << ',' << (series.null_side[i] ? 1 : 0);
        out << '\n';
    }
}

void write_series_json(std::ostream& out, const CurveSeries& series, const Provenance& provenance) {
    nlohmann::ordered_json doc;
    doc["provenance"] = provenance;
    doc["metadata"] = series.metadata;
    doc["x_label"] = series.x_label;
    doc["x"] = series.x;
    doc["ump"] = series.ump;
    doc["rand2"] = series.rand2;
    if (!series.ump_stderr.empty()) {
        doc["ump_stderr"] = series.ump_stderr;
        doc["rand2_stderr"] = series.rand2_stderr;
    }
    if (!series.null_side.empty()) doc["null_side"] = series.null_side;
    out << doc.dump(2) << '\n';
}

void write_table_csv(std::ostream& out, std::span<const TableRow> rows, const Provenance& provenance) {
    write_provenance_csv(out, provenance);
    out << kTableColumns << '\n';
    for (const auto& r : rows) {
        out << format_number(r.theta1) << ',' << format_number(r.theta2) << ','
            << format_number(r.delta) << ',' << r.k0 << ',' << format_number(r.k0_hat_ump) << ','
            << format_number(r.k0_hat_rand2) << ',' << format_number(r.stderr_ump) << ','
            << format_number(r.stderr_rand2) << '\n';
    }
}

nlohmann::ordered_json to_json(const TableRow& r) {
    nlohmann::ordered_json j;
    j["theta1"] = r.theta1;
    j["theta2"] = r.theta2;
    j["delta"] = r.delta;
    j["k0"] = r.k0;
    j["k0_hat_ump"] = json_number(r.k0_hat_ump);
    j["k0_hat_rand2"] = json_number(r.k0_hat_rand2);
    j["stderr_ump"] = json_number(r.stderr_ump);
    j["stderr_rand2"] = json_number(r.stderr_rand2);
    return j;
}

void write_table_json(std::ostream& out, std::span<const TableRow> rows, const Provenance& provenance) {
    nlohmann::ordered_json doc;
    doc["provenance"] = provenance;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : rows) doc["rows"].push_back(to_json(r));
    out << doc.dump(2) << '\n';
}

nlohmann::ordered_json to_json(const Pi0Estimate& e) {
    nlohmann::ordered_json j;
    j["k"] = e.k;
    j["lambda"] = e.lambda;
    j["ecdf_at_lambda"] = e.ecdf_at_lambda;
    j["k0_hat"] = e.k0_hat;
    j["pi0_hat"] = e.pi0_hat;
    j["intercept"] = e.intercept;
    return j;
}

}  // namespace eqrand
