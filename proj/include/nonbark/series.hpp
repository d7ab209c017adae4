#pragma once

#include <map>
#include <string>
#include <vector>

#include "nonbark/logcomplex.hpp"

namespace nonbark {

struct Sample {
  double coord;
  double re_w;
  double im_w;
  double abs_w;
};

// One plottable weak-value curve: samples sorted by coordinate plus a
// string-valued metadata block (parameter echo, code version, run mode)
// that survives serialization byte-for-byte.
struct WeakValueSeries {
  std::string coordinate;  // axis label, "x" or "t"
  std::vector<Sample> samples;
  std::map<std::string, std::string> metadata;

  void add(double coord, Complex w);
  void sort_samples();
};

// %.17g: enough digits that parsing the text recovers the same double.
std::string format_g17(double v);

// CSV: '#'-prefixed key=value metadata lines (keys in map order), then the
// fixed header coord,re_w,im_w,abs_w, then one row per sample.
std::string to_csv(const WeakValueSeries& s);

// JSON mirroring the struct: {"coordinate", "metadata", "samples"}.
std::string to_json(const WeakValueSeries& s);
WeakValueSeries from_json(const std::string& text);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace nonbark
