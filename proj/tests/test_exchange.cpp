#include <doctest.h>

#include <sstream>

#include "pseudobox/errors.hpp"
#include "pseudobox/exchange.hpp"
#include "pseudobox/rng.hpp"

using namespace pseudobox;

namespace {

std::vector<ImageRecord> random_records(SeededRng& rng, int n) {
    std::vector<ImageRecord> records;
    for (int i = 0; i < n; ++i) {
        ImageRecord rec;
        rec.image_id = "img_" + std::to_string(i);
        rec.width = 640.0;
        rec.height = 480.0;
        int gts = static_cast<int>(rng.below(4));
        for (int g = 0; g < gts; ++g) {
            double x = rng.uniform() * 500.0, y = rng.uniform() * 300.0;
            rec.gt.push_back(
                GtBox{Box{x, y, x + rng.uniform() * 100.0, y + rng.uniform() * 100.0},
                      static_cast<int>(rng.below(5))});
        }
        int dets = static_cast<int>(rng.below(4));
        for (int d = 0; d < dets; ++d) {
            double x = rng.uniform() * 500.0, y = rng.uniform() * 300.0;
            double s = rng.uniform();
            rec.detections.push_back(
                DetRecord{Box{x, y, x + rng.uniform() * 100.0, y + rng.uniform() * 100.0},
                          {s * 0.5, s * 0.5, 1.0 - s}});
        }
        records.push_back(std::move(rec));
    }
    return records;
}

std::string to_text(const std::vector<ImageRecord>& records, const std::string& header = "") {
    std::ostringstream out;
    write_exchange(out, records, header);
    return out.str();
}

}  // namespace

TEST_CASE("write/parse round trip is stable") {
    SeededRng rng(31);
    auto records = random_records(rng, 20);
    std::string text = to_text(records);
    std::istringstream in(text);
    auto parsed = parse_exchange(in);
    REQUIRE(parsed.size() == records.size());
    // parse(write(x)) is idempotent at 9-significant-digit formatting
    CHECK(to_text(parsed) == text);
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        CHECK(parsed[i].image_id == records[i].image_id);
        CHECK(parsed[i].gt.size() == records[i].gt.size());
        CHECK(parsed[i].detections.size() == records[i].detections.size());
    }
}

TEST_CASE("header lines are skipped by the parser") {
    SeededRng rng(32);
    auto records = random_records(rng, 3);
    std::string text = to_text(records, "{\"master_seed\":42,\"config\":{}}");
    std::istringstream in(text);
    CHECK(parse_exchange(in).size() == records.size());
}

TEST_CASE("malformed line reports its line number") {
    std::istringstream in(
        "{\"image_id\":\"a\",\"width\":1,\"height\":1,\"gt\":[],\"detections\":[]}\n"
        "{\"image_id\":\"b\",\"width\":1\n");
    try {
        parse_exchange(in);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("missing keys are data errors") {
    std::istringstream in("{\"image_id\":\"a\",\"width\":1}\n");
    CHECK_THROWS_AS(parse_exchange(in), DataError);
}

TEST_CASE("bad box shape is a data error") {
    std::istringstream in(
        "{\"image_id\":\"a\",\"width\":1,\"height\":1,\"gt\":[{\"box\":[1,2,3],\"class\":0}],"
        "\"detections\":[]}\n");
    CHECK_THROWS_AS(parse_exchange(in), DataError);
}

TEST_CASE("missing file is a data error") {
    CHECK_THROWS_AS(parse_exchange_file("/nonexistent/file.jsonl"), DataError);
}

TEST_CASE("format_g9 examples") {
    CHECK(format_g9(0.0) == "0");
    CHECK(format_g9(0.5) == "0.5");
    CHECK(format_g9(1.0 / 3.0) == "0.333333333");
}
