#include "nonbark/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nonbark/errors.hpp"

namespace nonbark {

void WeakValueSeries::add(double coord, Complex w) {
  samples.push_back({coord, w.real(), w.imag(), std::abs(w)});
}

void WeakValueSeries::sort_samples() {
  std::stable_sort(samples.begin(), samples.end(),
                   [](const Sample& a, const Sample& b) {
                     return a.coord < b.coord;
                   });
}

std::string format_g17(double v) {
  // negative zero would not survive a parse-and-reencode pass (json readers
  // may route "-0" through an integer), so normalize it away up front
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string to_csv(const WeakValueSeries& s) {
  std::string out;
  out += "# coordinate=" + s.coordinate + "\n";
  for (const auto& [key, value] : s.metadata) {
    out += "# " + key + "=" + value + "\n";
  }
  out += "coord,re_w,im_w,abs_w\n";
  for (const auto& sample : s.samples) {
    out += format_g17(sample.coord) + "," + format_g17(sample.re_w) + "," +
           format_g17(sample.im_w) + "," + format_g17(sample.abs_w) + "\n";
  }
  return out;
}

namespace {

std::string json_escape(const std::string& raw) {
  std::string out;
  for (char c : raw) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
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

}  // namespace

std::string to_json(const WeakValueSeries& s) {
  // Hand-assembled so numbers print as %.17g regardless of library
  // formatting choices; parsing still goes through the JSON library.
  std::string out = "{\n";
  out += "  \"coordinate\": \"" + json_escape(s.coordinate) + "\",\n";
  out += "  \"metadata\": {";
  bool first = true;
  for (const auto& [key, value] : s.metadata) {
    out += first ? "\n" : ",\n";
    out += "    \"" + json_escape(key) + "\": \"" + json_escape(value) + "\"";
    first = false;
  }
  out += first ? "},\n" : "\n  },\n";
  out += "  \"samples\": [";
  first = true;
  for (const auto& sample : s.samples) {
    out += first ? "\n" : ",\n";
    out += "    {\"coord\": " + format_g17(sample.coord) +
           ", \"re_w\": " + format_g17(sample.re_w) +
           ", \"im_w\": " + format_g17(sample.im_w) +
           ", \"abs_w\": " + format_g17(sample.abs_w) + "}";
    first = false;
  }
  out += first ? "]\n" : "\n  ]\n";
  out += "}\n";
  return out;
}

WeakValueSeries from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("series JSON parse failed: ") + e.what());
  }
  WeakValueSeries s;
  try {
    s.coordinate = doc.at("coordinate").get<std::string>();
    for (const auto& [key, value] : doc.at("metadata").items()) {
      s.metadata[key] = value.get<std::string>();
    }
    for (const auto& item : doc.at("samples")) {
      s.samples.push_back({item.at("coord").get<double>(),
                           item.at("re_w").get<double>(),
                           item.at("im_w").get<double>(),
                           item.at("abs_w").get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("series JSON missing field: ") + e.what());
  }
  return s;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path);
  return buf.str();
}

}  // namespace nonbark
