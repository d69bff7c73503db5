#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pseudobox/box.hpp"

namespace pseudobox {

// Line-delimited JSON, one image per line:
//   {"image_id": str, "width": num, "height": num,
//    "gt": [{"box": [x1,y1,x2,y2], "class": int}],
//    "detections": [{"box": [x1,y1,x2,y2], "scores": [C+1 floats]}]}
// Lines holding a "_header" object (resolved config + seed echo) are
// metadata and are skipped by the parser.
struct DetRecord {
    Box box;
    std::vector<double> scores;
};

struct ImageRecord {
    std::string image_id;
    double width = 0.0;
    double height = 0.0;
    std::vector<GtBox> gt;
    std::vector<DetRecord> detections;
};

// Throws DataError naming the 1-based line number on malformed input.
std::vector<ImageRecord> parse_exchange(std::istream& in);
std::vector<ImageRecord> parse_exchange_file(const std::string& path);

// Numbers are written with 9 significant digits ("%.9g") so outputs are
// byte-stable across platforms.
void write_exchange(std::ostream& out, const std::vector<ImageRecord>& records,
                    const std::string& header_json = "");

std::string format_g9(double v);

// JSON string escaping for the hand-rolled writers.
std::string json_escape(const std::string& s);

}  // namespace pseudobox
