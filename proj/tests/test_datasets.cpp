#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "synlog/datasets.hpp"
#include "synlog/errors.hpp"
#include "test_util.hpp"

using namespace synlog;
using namespace synlog::test;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;

    explicit TempDir(const char* name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

fs::path write_file(const fs::path& p, const std::string& data) {
    std::ofstream out(p, std::ios::binary);
    out << data;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("structured CSV loads records and truth") {
    TempDir dir("synlog_ds1");
    auto p = write_file(dir.path / "mini_structured.csv",
                        "LineId,Content,EventId,EventTemplate\n"
                        "1,open f1 failed,E1,open <*> failed\n"
                        "2,open f2 failed,E1,open <*> failed\n");
    StructuredDataset ds = load_structured_csv(p);
    CHECK(ds.name == "mini");
    REQUIRE(ds.records.size() == 2);
    CHECK(ds.records[0].line_id == 1);
    CHECK(ds.records[0].content == "open f1 failed");
    REQUIRE(ds.truth.has_value());
    CHECK(ds.truth->assignments.at(2) == "open <*> failed");
}

TEST_CASE("structured CSV without EventTemplate has no truth") {
    TempDir dir("synlog_ds2");
    auto p = write_file(dir.path / "x.csv", "Content\nhello world\n");
    StructuredDataset ds = load_structured_csv(p);
    CHECK_FALSE(ds.truth.has_value());
    REQUIRE(ds.records.size() == 1);
    CHECK(ds.records[0].line_id == 1);  // row ordinal fallback
}

TEST_CASE("quoted fields keep embedded commas and quotes") {
    TempDir dir("synlog_ds3");
    auto p = write_file(dir.path / "q.csv",
                        "LineId,Content,EventTemplate\n"
                        "1,\"a, b says \"\"hi\"\"\",\"a, <*>\"\n");
    StructuredDataset ds = load_structured_csv(p);
    REQUIRE(ds.records.size() == 1);
    CHECK(ds.records[0].content == "a, b says \"hi\"");
    CHECK(ds.truth->assignments.at(1) == "a, <*>");
}

TEST_CASE("missing Content column is a FormatError") {
    TempDir dir("synlog_ds4");
    auto p = write_file(dir.path / "bad.csv", "LineId,Message\n1,hello\n");
    CHECK_THROWS_AS(load_structured_csv(p), FormatError);
    CHECK_THROWS_AS(load_structured_csv(dir.path / "absent.csv"), IoError);

    auto dup = write_file(dir.path / "dup.csv", "LineId,Content\n7,a b\n7,c d\n");
    CHECK_THROWS_AS(load_structured_csv(dup), FormatError);
    auto blank = write_file(dir.path / "blank.csv", "LineId,Content\n1,  \n");
    CHECK_THROWS_AS(load_structured_csv(blank), FormatError);
}

TEST_CASE("raw log loading skips blank lines") {
    TempDir dir("synlog_ds5");
    auto p = write_file(dir.path / "plain.log", "one alpha\n\n  \ntwo beta\nthree gamma");
    StructuredDataset ds = load_raw_log(p);
    CHECK(ds.name == "plain");
    REQUIRE(ds.records.size() == 3);
    CHECK(ds.records[1].content == "two beta");
    CHECK(ds.records[2].line_id == 3);
    CHECK_FALSE(ds.truth.has_value());

    auto empty = write_file(dir.path / "empty.log", "");
    CHECK(load_raw_log(empty).records.empty());
}

TEST_CASE("extract_variables captures marker spans") {
    auto r = extract_variables("open f1 failed", parse_template_string("open <*> failed"));
    CHECK_FALSE(r.misaligned);
    CHECK(r.values == std::vector<std::string>{"f1"});

    r = extract_variables("took 15 ms", parse_template_string("took <*> ms"));
    CHECK(r.values == std::vector<std::string>{"15"});

    r = extract_variables("plain text", parse_template_string("plain text"));
    CHECK_FALSE(r.misaligned);
    CHECK(r.values.empty());
}

TEST_CASE("extract_variables spans multiple tokens non-greedily") {
    auto r = extract_variables("error at 10.0.0.1 8080", parse_template_string("error at <*>"));
    CHECK(r.values == std::vector<std::string>{"10.0.0.1 8080"});

    r = extract_variables("a x y b z", parse_template_string("a <*> b <*>"));
    CHECK(r.values == std::vector<std::string>{"x y", "z"});
}

TEST_CASE("extract_variables stays fast on repetitive near-miss inputs") {
    // many markers over a long run of identical tokens with no final anchor;
    // naive backtracking is combinatorial here
    std::string tpl = "<*>";
    for (int i = 0; i < 12; ++i) tpl += " a <*>";
    tpl += " zzz";
    std::string content = "a";
    for (int i = 0; i < 400; ++i) content += " a";
    auto r = extract_variables(content, parse_template_string(tpl));
    CHECK(r.misaligned);

    content += " zzz";
    r = extract_variables(content, parse_template_string(tpl));
    CHECK_FALSE(r.misaligned);
    CHECK(r.values.size() == 13);
}

TEST_CASE("misaligned template-content pairs are flagged") {
    auto r = extract_variables("open f1 failed", parse_template_string("close <*> failed"));
    CHECK(r.misaligned);
    CHECK(r.values.empty());

    // the marker must capture at least one token
    r = extract_variables("open failed", parse_template_string("open <*> failed"));
    CHECK(r.misaligned);
}

TEST_CASE("property: captures re-interleave into the content") {
    Rng rng(88);
    const char* consts[] = {"get", "put", "from", "into", "done", "err"};
    for (int iter = 0; iter < 200; ++iter) {
        // build a canonical template and a matching content
        Template tpl;
        std::string content;
        bool last_marker = false;
        std::size_t n = 1 + rng.below(6);
        for (std::size_t i = 0; i < n; ++i) {
            if (!last_marker && rng.chance(0.4)) {
                tpl.tokens.emplace_back(std::string(kVariableMarker));
                std::size_t span = 1 + rng.below(2);
                for (std::size_t s = 0; s < span; ++s) {
                    content += "v" + std::to_string(rng.below(100)) + " ";
                }
                last_marker = true;
            } else {
                std::string w = consts[rng.below(6)];
                tpl.tokens.emplace_back(w);
                content += w + " ";
                last_marker = false;
            }
        }
        ExtractResult r = extract_variables(content, tpl);
        REQUIRE_FALSE(r.misaligned);
        std::string rebuilt;
        std::size_t vi = 0;
        for (const Token& t : tpl.tokens) {
            if (!rebuilt.empty()) rebuilt += ' ';
            rebuilt += t.is_marker() ? r.values[vi++] : t.text;
        }
        CHECK(normalize_whitespace(rebuilt) == normalize_whitespace(content));
    }
}

TEST_CASE("scan_variables labels occurrences by first matching rule") {
    TempDir dir("synlog_ds6");
    auto p = write_file(dir.path / "vars_structured.csv",
                        "LineId,Content,EventTemplate\n"
                        "1,Connection from 10.0.0.5 closed,Connection from <*> closed\n"
                        "2,verifying blk_7236 checksum,verifying <*> checksum\n"
                        "3,cache used 126MB total,cache used <*> total\n");
    StructuredDataset ds = load_structured_csv(p);
    VariableScan scan = scan_variables(ds, RegexRuleSet::builtin_defaults());
    REQUIRE(scan.occurrences.size() == 3);
    CHECK(scan.occurrences[0].category == "ip_address");
    CHECK(scan.occurrences[1].category == "unmatched");
    CHECK(scan.occurrences[1].value == "blk_7236");
    CHECK(scan.occurrences[2].category == "memory");
    CHECK(scan.misaligned_pairs == 0);
}

TEST_CASE("scan_variables surfaces misaligned pairs") {
    TempDir dir("synlog_ds7");
    auto p = write_file(dir.path / "mis_structured.csv",
                        "LineId,Content,EventTemplate\n"
                        "1,alpha beta,totally different <*>\n");
    StructuredDataset ds = load_structured_csv(p);
    VariableScan scan = scan_variables(ds, RegexRuleSet::builtin_defaults());
    CHECK(scan.occurrences.empty());
    CHECK(scan.misaligned_pairs == 1);
}

TEST_CASE("write_structured_output emits both CSVs deterministically") {
    TempDir dir("synlog_ds8");
    StructuredDataset ds;
    ds.name = "demo";
    ds.records = {{1, "open f1 failed"}, {2, "open f2 failed"}, {3, "node down"}};
    ParseResult result;
    std::uint32_t open_idx = result.add_template("open <*> failed");
    result.assign(1, open_idx);
    result.assign(2, open_idx);
    result.assign(3, result.add_template("node down"));

    write_structured_output(ds, result, dir.path / "out1");
    write_structured_output(ds, result, dir.path / "out2");

    std::string structured = slurp(dir.path / "out1" / "demo_structured.csv");
    CHECK(structured ==
          "LineId,Content,EventId,EventTemplate\n"
          "1,open f1 failed,E1,open <*> failed\n"
          "2,open f2 failed,E1,open <*> failed\n"
          "3,node down,E2,node down\n");
    std::string templates = slurp(dir.path / "out1" / "demo_templates.csv");
    CHECK(templates ==
          "EventId,EventTemplate,Occurrences\n"
          "E1,open <*> failed,2\n"
          "E2,node down,1\n");
    CHECK(slurp(dir.path / "out2" / "demo_structured.csv") == structured);
    CHECK(slurp(dir.path / "out2" / "demo_templates.csv") == templates);
}

TEST_CASE("write then load round-trips the assignments") {
    TempDir dir("synlog_ds9");
    StructuredDataset ds;
    ds.name = "rt";
    ds.records = {{1, "a, b"}, {2, "c \"q\" d"}};
    ParseResult result;
    result.assign(1, result.add_template("a, <*>"));
    result.assign(2, result.add_template("c <*> d"));
    write_structured_output(ds, result, dir.path);

    StructuredDataset reloaded = load_structured_csv(dir.path / "rt_structured.csv");
    REQUIRE(reloaded.truth.has_value());
    CHECK(reloaded.records[0].content == "a, b");
    CHECK(reloaded.records[1].content == "c \"q\" d");
    CHECK(reloaded.truth->assignments.at(1) == "a, <*>");
    CHECK(reloaded.truth->assignments.at(2) == "c <*> d");
}

TEST_CASE("empty dataset writes headers only") {
    TempDir dir("synlog_ds10");
    StructuredDataset ds;
    ds.name = "void";
    write_structured_output(ds, ParseResult{}, dir.path);
    CHECK(slurp(dir.path / "void_structured.csv") == "LineId,Content,EventId,EventTemplate\n");
    CHECK(slurp(dir.path / "void_templates.csv") == "EventId,EventTemplate,Occurrences\n");
}

TEST_CASE("dataset names strip the usual suffixes") {
    CHECK(dataset_name_from_path("Spark_2k.log_structured.csv") == "Spark_2k");
    CHECK(dataset_name_from_path("HPC_structured_corrected.csv") == "HPC");
    CHECK(dataset_name_from_path("/x/y/openssh.log") == "openssh");
    CHECK(dataset_name_from_path("plain") == "plain");
}
