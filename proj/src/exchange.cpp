#include "pseudobox/exchange.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "pseudobox/errors.hpp"

namespace pseudobox {

std::string format_g9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

namespace {

Box parse_box(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 4) throw DataError("box must be an array of 4 numbers");
    Box b{j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
    if (!b.is_finite()) throw DataError("box coordinates must be finite");
    return b;
}

ImageRecord parse_record(const nlohmann::json& j) {
    ImageRecord rec;
    rec.image_id = j.at("image_id").get<std::string>();
    rec.width = j.at("width").get<double>();
    rec.height = j.at("height").get<double>();
    for (const auto& g : j.at("gt")) {
        GtBox gb;
        gb.box = parse_box(g.at("box"));
        gb.cls = g.at("class").get<int>();
        rec.gt.push_back(gb);
    }
    for (const auto& d : j.at("detections")) {
        DetRecord dr;
        dr.box = parse_box(d.at("box"));
        dr.scores = d.at("scores").get<std::vector<double>>();
        if (dr.scores.size() < 2) throw DataError("detection needs >= 2 score entries");
        rec.detections.push_back(dr);
    }
    return rec;
}

}  // namespace

std::vector<ImageRecord> parse_exchange(std::istream& in) {
    std::vector<ImageRecord> records;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded())
            throw DataError("exchange line " + std::to_string(lineno) + ": invalid JSON");
        if (j.is_object() && j.contains("_header")) continue;
        try {
            records.push_back(parse_record(j));
        } catch (const nlohmann::json::exception& e) {
            throw DataError("exchange line " + std::to_string(lineno) + ": " + e.what());
        } catch (const DataError& e) {
            throw DataError("exchange line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return records;
}

std::vector<ImageRecord> parse_exchange_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open exchange file: " + path);
    return parse_exchange(in);
}

namespace {

void write_box(std::ostream& out, const Box& b) {
    out << '[' << format_g9(b.x1) << ',' << format_g9(b.y1) << ',' << format_g9(b.x2) << ','
        << format_g9(b.y2) << ']';
}

}  // namespace

void write_exchange(std::ostream& out, const std::vector<ImageRecord>& records,
                    const std::string& header_json) {
    if (!header_json.empty()) out << "{\"_header\":" << header_json << "}\n";
    for (const ImageRecord& rec : records) {
        out << "{\"image_id\":\"" << json_escape(rec.image_id)
            << "\",\"width\":" << format_g9(rec.width) << ",\"height\":" << format_g9(rec.height)
            << ",\"gt\":[";
        for (std::size_t i = 0; i < rec.gt.size(); ++i) {
            if (i) out << ',';
            out << "{\"box\":";
            write_box(out, rec.gt[i].box);
            out << ",\"class\":" << rec.gt[i].cls << '}';
        }
        out << "],\"detections\":[";
        for (std::size_t i = 0; i < rec.detections.size(); ++i) {
            if (i) out << ',';
            out << "{\"box\":";
            write_box(out, rec.detections[i].box);
            out << ",\"scores\":[";
            for (std::size_t c = 0; c < rec.detections[i].scores.size(); ++c) {
                if (c) out << ',';
                out << format_g9(rec.detections[i].scores[c]);
            }
            out << "]}";
        }
        out << "]}\n";
    }
}

}  // namespace pseudobox
