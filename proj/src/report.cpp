#include "cusplab/report.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cusplab/error.hpp"

namespace cusplab {

using nlohmann::json;

namespace {

const char* kind_name(HeightKind k) { return k == HeightKind::one ? "one" : "top"; }

HeightKind kind_from(const std::string& s) {
  if (s == "one") return HeightKind::one;
  if (s == "top") return HeightKind::top;
  throw ParseError("unknown height kind '" + s + "'");
}

json parse_document(const std::string& text, const char* kind) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || doc.value("kind", "") != kind) throw ParseError(std::string("not a ") + kind + " document");
  return doc;
}

}  // namespace

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::csv;
  if (text == "json") return Format::json;
  throw ParseError("format must be csv or json, got '" + text + "'");
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x == 0 ? 0.0 : x);
  return buf;
}

std::string join_ints(const IntVector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(v[i]);
  }
  return out;
}

std::string render_trace(const std::vector<HeightSample>& samples, int s, double C, Format format) {
  auto slack_low = [&](const HeightSample& x) { return -x.h1 - ((s - 1) * -x.hTop - C); };
  auto slack_high = [&](const HeightSample& x) { return -x.hTop / (s - 1) + C + x.h1; };
  if (format == Format::csv) {
    std::string out = "t,h1,hTop,w1,wTop,slack_low,slack_high\n";
    for (const auto& x : samples) {
      out += format_number(x.t) + ',' + format_number(x.h1) + ',' + format_number(x.hTop) + ',' +
             join_ints(x.witness1) + ',' + join_ints(x.witnessTop) + ',' + format_number(slack_low(x)) + ',' +
             format_number(slack_high(x)) + '\n';
    }
    return out;
  }
  json rows = json::array();
  for (const auto& x : samples) {
    rows.push_back({{"t", x.t},
                    {"h1", x.h1},
                    {"hTop", x.hTop},
                    {"w1", x.witness1},
                    {"wTop", x.witnessTop},
                    {"slack_low", slack_low(x)},
                    {"slack_high", slack_high(x)}});
  }
  json doc = {{"kind", "trace"}, {"s", s}, {"slack_constant", C}, {"samples", rows}};
  return doc.dump(1) + '\n';
}

std::vector<HeightSample> parse_trace_json(const std::string& text) {
  auto doc = parse_document(text, "trace");
  std::vector<HeightSample> out;
  try {
    for (const auto& r : doc.at("samples")) {
      HeightSample x;
      x.t = r.at("t").get<double>();
      x.h1 = r.at("h1").get<double>();
      x.hTop = r.at("hTop").get<double>();
      x.witness1 = r.at("w1").get<IntVector>();
      x.witnessTop = r.at("wTop").get<IntVector>();
      out.push_back(std::move(x));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad trace record: ") + e.what());
  }
  return out;
}

std::string render_excursions(const std::vector<ExcursionRecord>& records, Format format) {
  if (format == Format::csv) {
    std::string out = "t_peak,k,height,witness,margin\n";
    for (const auto& r : records) {
      out += format_number(r.t_peak) + ',' + kind_name(r.k) + ',' + format_number(r.height) + ',' +
             join_ints(r.witness) + ',' + format_number(r.margin) + '\n';
    }
    return out;
  }
  json rows = json::array();
  for (const auto& r : records) {
    rows.push_back({{"t_peak", r.t_peak},
                    {"k", kind_name(r.k)},
                    {"height", r.height},
                    {"witness", r.witness},
                    {"margin", r.margin}});
  }
  json doc = {{"kind", "excursions"}, {"records", rows}};
  return doc.dump(1) + '\n';
}

std::vector<ExcursionRecord> parse_excursions_json(const std::string& text) {
  auto doc = parse_document(text, "excursions");
  std::vector<ExcursionRecord> out;
  try {
    for (const auto& r : doc.at("records")) {
      ExcursionRecord x;
      x.t_peak = r.at("t_peak").get<double>();
      x.k = kind_from(r.at("k").get<std::string>());
      x.height = r.at("height").get<double>();
      x.witness = r.at("witness").get<IntVector>();
      x.margin = r.at("margin").get<double>();
      out.push_back(std::move(x));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad excursion record: ") + e.what());
  }
  return out;
}

std::string render_solutions(const std::vector<PrimitiveSolution>& solutions, Format format) {
  if (format == Format::csv) {
    std::string out = "qnorm,residual,p,q\n";
    for (const auto& x : solutions) {
      out += format_real(x.qnorm, 17) + ',' + format_real(x.residual, 17) + ',' + join_ints(x.p) + ',' +
             join_ints(x.q) + '\n';
    }
    return out;
  }
  json rows = json::array();
  for (const auto& x : solutions) {
    rows.push_back({{"qnorm", format_real(x.qnorm, 17)},
                    {"residual", format_real(x.residual, 17)},
                    {"p", x.p},
                    {"q", x.q}});
  }
  json doc = {{"kind", "solutions"}, {"solutions", rows}};
  return doc.dump(1) + '\n';
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("cannot write to stdout");
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  f.close();
  if (!f) throw IoError("write to '" + path + "' failed");
}

}  // namespace cusplab
