#include "nearhol/serialize.hpp"

#include <cstdio>
#include <map>
#include <sstream>

namespace nearhol {

using nlohmann::ordered_json;

namespace {

const std::vector<std::string> kCsvColumns{"lambda", "multiplicity", "lower_bound", "exact",
                                           "l2_status", "origin_m", "origin_beta"};

std::map<std::string, int> status_counts(const DecompositionTable& t) {
    std::map<std::string, int> out{{"InL2", 0}, {"NotInL2", 0}, {"Undecided", 0}};
    for (const auto& e : t.entries) ++out[to_string(e.l2_status)];
    return out;
}

BundleSpec bundle_from_fields(const std::string& text, int k, const std::string& mu) {
    BundleSpec b;
    if (text == "cotangent") b.kind = BundleKind::Cotangent;
    else if (text.rfind("line:", 0) == 0) b.kind = BundleKind::LineBundle;
    else if (text.rfind("mu:", 0) == 0) b.kind = BundleKind::GeneralIrreducible;
    else throw ParameterError("unknown bundle '" + text + "'");
    b.k = k;
    b.mu = parse_weight(mu);
    if (b.to_string() != text) throw ParameterError("bundle '" + text + "' disagrees with its weight");
    return b;
}

Partition partition_from_string(const std::string& s) {
    std::vector<int> parts;
    const Weight w = parse_weight(s);
    for (const auto& q : w.coords()) {
        if (!q.is_integer()) throw ParameterError("signature entries must be integers: " + s);
        parts.push_back(static_cast<int>(q.numerator()));
    }
    return Partition(parts);
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) throw ParameterError("unterminated quote in CSV line");
    out.push_back(cur);
    return out;
}

int to_int(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used == s.size()) return v;
    } catch (const std::logic_error&) {
    }
    throw ParameterError("bad integer for " + what + ": '" + s + "'");
}

bool to_bool(const std::string& s, const std::string& what) {
    if (s == "true") return true;
    if (s == "false") return false;
    throw ParameterError("bad boolean for " + what + ": '" + s + "'");
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

std::string degrees_string(const std::vector<int>& d) {
    std::string out = "(";
    for (std::size_t i = 0; i < d.size(); ++i) out += (i ? "," : "") + std::to_string(d[i]);
    return out + ")";
}

} // namespace

Format parse_format(const std::string& text) {
    if (text == "json") return Format::Json;
    if (text == "csv") return Format::Csv;
    if (text == "md") return Format::Markdown;
    throw ParameterError("unknown output format '" + text + "' (expected json, csv or md)");
}

std::string format_residual(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6e", x);
    return buf;
}

ordered_json table_to_json(const DecompositionTable& table) {
    ordered_json j;
    j["schema"] = kTableSchema;
    j["space"] = table.space;
    j["bundle"] = table.bundle.to_string();
    j["k"] = table.bundle.k;
    j["mu"] = table.bundle.mu.to_string();
    const auto& c = table.constants;
    j["constants"] = ordered_json{{"r", c.r}, {"a", c.a}, {"b", c.b}, {"g", c.g}, {"n", c.n}};
    j["cutoff"] = table.cutoff;
    j["multiplicity_free"] = table.multiplicity_free;
    ordered_json counts = ordered_json::object();
    for (const auto& [name, n] : status_counts(table)) counts[name] = n;
    j["status_counts"] = counts;
    ordered_json rows = ordered_json::array();
    for (const auto& e : table.entries) {
        ordered_json row;
        row["lambda"] = e.lambda.to_string();
        row["multiplicity"] = e.multiplicity;
        row["lower_bound"] = e.lower_bound;
        row["exact"] = e.exact;
        row["l2_status"] = to_string(e.l2_status);
        row["origin_m"] = e.origin_m ? ordered_json(e.origin_m->parts()) : ordered_json(nullptr);
        row["origin_beta"] = e.origin_beta ? ordered_json(e.origin_beta->to_string()) : ordered_json(nullptr);
        rows.push_back(row);
    }
    j["entries"] = rows;
    return j;
}

DecompositionTable table_from_json(const ordered_json& j) {
    try {
        if (j.at("schema").get<std::string>() != kTableSchema)
            throw ParameterError("unsupported schema '" + j.at("schema").get<std::string>() + "'");
        DecompositionTable t;
        t.space = j.at("space").get<std::string>();
        t.bundle = bundle_from_fields(j.at("bundle").get<std::string>(), j.at("k").get<int>(),
                                      j.at("mu").get<std::string>());
        const auto& c = j.at("constants");
        t.constants = {c.at("r").get<int>(), c.at("a").get<int>(), c.at("b").get<int>(), c.at("g").get<int>(),
                       c.at("n").get<int>()};
        t.cutoff = j.at("cutoff").get<int>();
        t.multiplicity_free = j.at("multiplicity_free").get<bool>();
        for (const auto& row : j.at("entries")) {
            KTypeEntry e;
            e.lambda = parse_weight(row.at("lambda").get<std::string>());
            e.multiplicity = row.at("multiplicity").get<int>();
            e.lower_bound = row.at("lower_bound").get<int>();
            e.exact = row.at("exact").get<bool>();
            e.l2_status = parse_l2_status(row.at("l2_status").get<std::string>());
            if (!row.at("origin_m").is_null()) e.origin_m = Partition(row.at("origin_m").get<std::vector<int>>());
            if (!row.at("origin_beta").is_null())
                e.origin_beta = parse_weight(row.at("origin_beta").get<std::string>());
            t.entries.push_back(std::move(e));
        }
        return t;
    } catch (const nlohmann::json::exception& ex) {
        throw ParameterError(std::string("malformed table JSON: ") + ex.what());
    }
}

std::string write_table(const DecompositionTable& table, Format format) {
    std::ostringstream os;
    const auto& c = table.constants;
    const auto counts = status_counts(table);
    switch (format) {
    case Format::Json: return table_to_json(table).dump(2) + "\n";
    case Format::Csv:
        os << "# schema=" << kTableSchema << "\n"
           << "# space=" << table.space << "\n"
           << "# bundle=" << table.bundle.to_string() << "\n"
           << "# k=" << table.bundle.k << "\n"
           << "# mu=" << table.bundle.mu.to_string() << "\n"
           << "# r=" << c.r << "\n# a=" << c.a << "\n# b=" << c.b << "\n# g=" << c.g << "\n# n=" << c.n << "\n"
           << "# cutoff=" << table.cutoff << "\n"
           << "# multiplicity_free=" << bool_str(table.multiplicity_free) << "\n";
        for (const auto& [name, n] : counts) os << "# status." << name << "=" << n << "\n";
        for (std::size_t i = 0; i < kCsvColumns.size(); ++i) os << (i ? "," : "") << kCsvColumns[i];
        os << "\n";
        for (const auto& e : table.entries) {
            os << csv_quote(e.lambda.to_string()) << "," << e.multiplicity << "," << e.lower_bound << ","
               << bool_str(e.exact) << "," << to_string(e.l2_status) << ","
               << (e.origin_m ? csv_quote(e.origin_m->to_string()) : "") << ","
               << (e.origin_beta ? csv_quote(e.origin_beta->to_string()) : "") << "\n";
        }
        return os.str();
    case Format::Markdown:
        os << "# " << table.space << ", bundle " << table.bundle.to_string() << "\n\n"
           << "- schema: " << kTableSchema << "\n"
           << "- (r, a, b, g, n) = (" << c.r << ", " << c.a << ", " << c.b << ", " << c.g << ", " << c.n << ")\n"
           << "- fiber highest weight: " << table.bundle.mu.to_string() << "\n"
           << "- cutoff: " << table.cutoff << "\n"
           << "- multiplicity free: " << (table.multiplicity_free ? "yes" : "no") << "\n"
           << "- statuses: InL2 " << counts.at("InL2") << ", NotInL2 " << counts.at("NotInL2") << ", Undecided "
           << counts.at("Undecided") << "\n\n"
           << "| lambda | multiplicity | lower bound | exact | L2 status | m | beta |\n"
           << "|---|---|---|---|---|---|---|\n";
        for (const auto& e : table.entries) {
            os << "| " << e.lambda.to_string() << " | " << e.multiplicity << " | " << e.lower_bound << " | "
               << (e.exact ? "yes" : "no") << " | " << to_string(e.l2_status) << " | "
               << (e.origin_m ? e.origin_m->to_string() : "-") << " | "
               << (e.origin_beta ? e.origin_beta->to_string() : "-") << " |\n";
        }
        return os.str();
    }
    return {};
}

DecompositionTable read_table(const std::string& text, Format format) {
    if (format == Format::Json) {
        ordered_json j;
        try {
            j = ordered_json::parse(text);
        } catch (const nlohmann::json::exception& ex) {
            throw ParameterError(std::string("malformed table JSON: ") + ex.what());
        }
        return table_from_json(j);
    }
    if (format != Format::Csv) throw ParameterError("tables can be read from JSON or CSV only");

    std::map<std::string, std::string> header;
    std::vector<std::vector<std::string>> rows;
    bool columns_seen = false;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line.rfind("# ", 0) == 0) {
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw ParameterError("bad CSV header line '" + line + "'");
            header[line.substr(2, eq - 2)] = line.substr(eq + 1);
            continue;
        }
        auto fields = csv_split(line);
        if (!columns_seen) {
            if (fields != kCsvColumns) throw ParameterError("unexpected CSV columns");
            columns_seen = true;
            continue;
        }
        if (fields.size() != kCsvColumns.size()) throw ParameterError("wrong field count in CSV row '" + line + "'");
        rows.push_back(std::move(fields));
    }
    auto get = [&](const std::string& key) {
        const auto it = header.find(key);
        if (it == header.end()) throw ParameterError("CSV header lacks '" + key + "'");
        return it->second;
    };
    if (get("schema") != kTableSchema) throw ParameterError("unsupported schema '" + get("schema") + "'");
    DecompositionTable t;
    t.space = get("space");
    t.bundle = bundle_from_fields(get("bundle"), to_int(get("k"), "k"), get("mu"));
    t.constants = {to_int(get("r"), "r"), to_int(get("a"), "a"), to_int(get("b"), "b"), to_int(get("g"), "g"),
                   to_int(get("n"), "n")};
    t.cutoff = to_int(get("cutoff"), "cutoff");
    t.multiplicity_free = to_bool(get("multiplicity_free"), "multiplicity_free");
    for (const auto& f : rows) {
        KTypeEntry e;
        e.lambda = parse_weight(f[0]);
        e.multiplicity = to_int(f[1], "multiplicity");
        e.lower_bound = to_int(f[2], "lower_bound");
        e.exact = to_bool(f[3], "exact");
        e.l2_status = parse_l2_status(f[4]);
        if (!f[5].empty()) e.origin_m = partition_from_string(f[5]);
        if (!f[6].empty()) e.origin_beta = parse_weight(f[6]);
        t.entries.push_back(std::move(e));
    }
    return t;
}

std::string write_verify(const VerifyReport& report, Format format) {
    std::ostringstream os;
    switch (format) {
    case Format::Json: {
        ordered_json j;
        j["schema"] = kVerifySchema;
        j["space"] = report.space;
        j["suite"] = report.suite;
        j["seed"] = report.seed;
        j["passed"] = report.passed();
        j["max_residual"] = format_residual(report.max_residual());
        ordered_json checks = ordered_json::array();
        for (const auto& c : report.checks) {
            checks.push_back(ordered_json{{"name", c.name},
                                          {"passed", c.passed()},
                                          {"residual", format_residual(c.residual)},
                                          {"threshold", format_residual(c.threshold)},
                                          {"samples", c.samples},
                                          {"note", c.note}});
        }
        j["checks"] = checks;
        j["skipped"] = report.skipped;
        return j.dump(2) + "\n";
    }
    case Format::Csv:
        os << "# schema=" << kVerifySchema << "\n# space=" << report.space << "\n# suite=" << report.suite
           << "\n# seed=" << report.seed << "\n";
        for (const auto& s : report.skipped) os << "# skipped=" << s << "\n";
        os << "name,passed,residual,threshold,samples,note\n";
        for (const auto& c : report.checks)
            os << csv_quote(c.name) << "," << bool_str(c.passed()) << "," << format_residual(c.residual) << ","
               << format_residual(c.threshold) << "," << c.samples << "," << csv_quote(c.note) << "\n";
        return os.str();
    case Format::Markdown:
        os << "# verify " << report.suite << " on " << report.space << " (seed " << report.seed << ")\n\n"
           << "| check | result | residual | threshold | samples | note |\n|---|---|---|---|---|---|\n";
        for (const auto& c : report.checks)
            os << "| " << c.name << " | " << (c.passed() ? "pass" : "FAIL") << " | " << format_residual(c.residual)
               << " | " << format_residual(c.threshold) << " | " << c.samples << " | " << c.note << " |\n";
        for (const auto& s : report.skipped) os << "\nskipped: " << s << " (no matrix model)";
        if (!report.skipped.empty()) os << "\n";
        os << "\n" << (report.passed() ? "all checks passed" : "verification FAILED")
           << ", max residual " << format_residual(report.max_residual()) << "\n";
        return os.str();
    }
    return {};
}

std::string write_conjecture(const ConjectureReport& report, Format format) {
    std::ostringstream os;
    auto probe_str = [](const ConjectureRow& r) { return r.probe ? to_string(*r.probe) : std::string("-"); };
    switch (format) {
    case Format::Json: {
        ordered_json j;
        j["schema"] = kConjectureSchema;
        j["space"] = report.space;
        j["bundle"] = report.bundle.to_string();
        j["cutoff"] = report.cutoff;
        j["summary"] = ordered_json{{"agree", report.count(Verdict::Agree)},
                                    {"disagree", report.count(Verdict::Disagree)},
                                    {"unknown", report.count(Verdict::Unknown)}};
        ordered_json rows = ordered_json::array();
        for (const auto& r : report.rows) {
            rows.push_back(ordered_json{{"m", r.m.parts()},
                                        {"lambda", r.lambda.to_string()},
                                        {"degrees", r.degrees},
                                        {"degree_criterion", r.degree_criterion},
                                        {"minor_criterion", r.minor_criterion},
                                        {"probe", r.probe ? ordered_json(to_string(*r.probe)) : ordered_json(nullptr)},
                                        {"verdict", to_string(r.verdict)}});
        }
        j["rows"] = rows;
        return j.dump(2) + "\n";
    }
    case Format::Csv:
        os << "# schema=" << kConjectureSchema << "\n# space=" << report.space << "\n# bundle="
           << report.bundle.to_string() << "\n# cutoff=" << report.cutoff << "\n"
           << "m,lambda,degrees,degree_criterion,minor_criterion,probe,verdict\n";
        for (const auto& r : report.rows)
            os << csv_quote(r.m.to_string()) << "," << csv_quote(r.lambda.to_string()) << ","
               << csv_quote(degrees_string(r.degrees)) << "," << bool_str(r.degree_criterion) << ","
               << bool_str(r.minor_criterion) << "," << probe_str(r) << "," << to_string(r.verdict) << "\n";
        return os.str();
    case Format::Markdown:
        os << "# degree criterion scan on " << report.space << ", bundle " << report.bundle.to_string()
           << ", cutoff " << report.cutoff << "\n\n"
           << "| m | lambda | degrees | degree test | minor test | probe | verdict |\n|---|---|---|---|---|---|---|\n";
        for (const auto& r : report.rows)
            os << "| " << r.m.to_string() << " | " << r.lambda.to_string() << " | " << degrees_string(r.degrees)
               << " | " << bool_str(r.degree_criterion) << " | " << bool_str(r.minor_criterion) << " | "
               << probe_str(r) << " | " << to_string(r.verdict) << " |\n";
        os << "\nagree " << report.count(Verdict::Agree) << ", disagree " << report.count(Verdict::Disagree)
           << ", unknown " << report.count(Verdict::Unknown) << "\n";
        return os.str();
    }
    return {};
}

} // namespace nearhol
