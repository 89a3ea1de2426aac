#include <doctest.h>

#include "nearhol/serialize.hpp"

using namespace nearhol;
using nlohmann::ordered_json;

namespace {

RootSystemData rd(const std::string& s) { return build_root_data(HermitianType::parse(s)); }

std::vector<DecompositionTable> sample_tables() {
    std::vector<DecompositionTable> out;
    for (const auto& [s, b] : std::vector<std::pair<std::string, std::string>>{
             {"I:1,1", "line:0"}, {"I:2,3", "line:-1"}, {"I:2,2", "cotangent"}, {"III:3", "line:2"},
             {"I:2,2", "mu:1,0,0,0"}, {"EVII", "line:1"}, {"EIII", "cotangent"}}) {
        const auto d = rd(s);
        auto t = spectrum_support(BundleSpec::parse(b, d), 3, d);
        t.space = d.type.to_string();
        out.push_back(std::move(t));
    }
    return out;
}

void check_same(const DecompositionTable& a, const DecompositionTable& b) {
    CHECK(a.space == b.space);
    CHECK(a.bundle.kind == b.bundle.kind);
    CHECK(a.bundle.k == b.bundle.k);
    CHECK(a.bundle.mu == b.bundle.mu);
    CHECK(a.constants == b.constants);
    CHECK(a.cutoff == b.cutoff);
    CHECK(a.multiplicity_free == b.multiplicity_free);
    CHECK(a.entries == b.entries);
}

} // namespace

TEST_CASE("formats") {
    CHECK(parse_format("json") == Format::Json);
    CHECK(parse_format("csv") == Format::Csv);
    CHECK(parse_format("md") == Format::Markdown);
    CHECK_THROWS_AS(parse_format("xml"), ParameterError);
    CHECK(format_residual(1.2345671e-8) == "1.234567e-08");
    CHECK(format_residual(0.0) == "0.000000e+00");
}

TEST_CASE("table JSON carries the header block") {
    const auto d = rd("I:1,1");
    const auto j = table_to_json(spectrum_support(BundleSpec::line(0, d), 2, d));
    CHECK(j["schema"] == kTableSchema);
    CHECK(j["constants"]["g"] == 2);
    CHECK(j["cutoff"] == 2);
    CHECK(j["status_counts"]["InL2"] == 3);
    CHECK(j["entries"].size() == 3);
    for (const auto& e : j["entries"]) CHECK(e["multiplicity"] == 1);
}

TEST_CASE("tables round-trip through JSON and CSV") {
    for (const auto& t : sample_tables()) {
        CAPTURE(t.space);
        for (const Format f : {Format::Json, Format::Csv}) {
            const std::string text = write_table(t, f);
            const DecompositionTable back = read_table(text, f);
            check_same(t, back);
            CHECK(write_table(back, f) == text);
        }
        CHECK(table_from_json(table_to_json(t)).entries == t.entries);
        const std::string md = write_table(t, Format::Markdown);
        CHECK(md.find("| lambda") != std::string::npos);
    }
}

TEST_CASE("malformed tables are rejected") {
    CHECK_THROWS_AS(read_table("{}", Format::Json), ParameterError);
    CHECK_THROWS_AS(read_table("not json", Format::Json), ParameterError);
    CHECK_THROWS_AS(read_table("", Format::Csv), ParameterError);
    const auto d = rd("I:1,1");
    auto j = table_to_json(spectrum_support(BundleSpec::line(0, d), 1, d));
    j["schema"] = "nearhol.table/0";
    CHECK_THROWS_AS(table_from_json(j), ParameterError);
    j = table_to_json(spectrum_support(BundleSpec::line(0, d), 1, d));
    j["entries"][0]["l2_status"] = "Perhaps";
    CHECK_THROWS_AS(table_from_json(j), ParameterError);
    std::string csv = write_table(spectrum_support(BundleSpec::line(0, d), 1, d), Format::Csv);
    csv.replace(csv.rfind("InL2"), 4, "Nope");
    CHECK_THROWS_AS(read_table(csv, Format::Csv), ParameterError);
    CHECK_THROWS_AS(read_table("x", Format::Markdown), ParameterError);
}

TEST_CASE("verify reports") {
    VerifyReport r;
    r.space = "I:1,1";
    r.suite = "all";
    r.seed = 3;
    r.checks.push_back({"jordan.a", 1e-12, 1e-8, 10, "ok"});
    r.checks.push_back({"jordan.b, with comma", 2.0, 0.0, 5, "has \"quotes\""});
    r.skipped.push_back("integrals");
    const auto j = ordered_json::parse(write_verify(r, Format::Json));
    CHECK(j["schema"] == kVerifySchema);
    CHECK(j["passed"] == false);
    CHECK(j["checks"][0]["residual"] == "1.000000e-12");
    CHECK(j["checks"][1]["passed"] == false);
    CHECK(j["max_residual"] == "2.000000e+00");
    CHECK(j["skipped"][0] == "integrals");
    const std::string csv = write_verify(r, Format::Csv);
    CHECK(csv.find("\"jordan.b, with comma\"") != std::string::npos);
    CHECK(csv.find("name,passed,residual,threshold,samples,note") != std::string::npos);
    CHECK(write_verify(r, Format::Markdown).find("jordan.a") != std::string::npos);
}

TEST_CASE("conjecture reports") {
    const auto d = rd("I:1,1");
    const auto rep = conjecture_scan(BundleSpec::cotangent(d), 2, d);
    const auto j = ordered_json::parse(write_conjecture(rep, Format::Json));
    CHECK(j["schema"] == kConjectureSchema);
    CHECK(j["summary"]["agree"] == 3);
    CHECK(j["rows"].size() == 3);
    CHECK(j["rows"][1]["probe"] == "Divergent");
    CHECK(write_conjecture(rep, Format::Csv).find("# schema=nearhol.conjecture/1") == 0);
    CHECK(write_conjecture(rep, Format::Markdown).find("agree") != std::string::npos);
}
