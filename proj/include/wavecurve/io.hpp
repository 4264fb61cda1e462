#pragma once

// Serialization: contours, Fourier descriptions, pyramid output, and dataset
// records as JSON; masks as binary PGM.  Writers are hand-rolled so the byte
// stream is fully deterministic; floats go out with 17 significant digits,
// which round-trips doubles exactly.  Readers use nlohmann::json and report
// dataset problems with line numbers.

#include <array>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "wavecurve/fourier_contour.hpp"
#include "wavecurve/geometry.hpp"
#include "wavecurve/groundtruth.hpp"
#include "wavecurve/pyramid.hpp"

namespace wavecurve {

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline void append_array(std::string& out, const std::vector<double>& v) {
  out += '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_g17(v[i]);
  }
  out += ']';
}

inline std::vector<double> number_array(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) throw io_error(std::string(what) + ": expected an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number()) throw io_error(std::string(what) + ": expected numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace detail

// ---- contours ----

inline std::string contour_to_json(const PolyContour& poly) {
  std::string out = "{\"points\":[";
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (i) out += ',';
    out += '[';
    out += format_g17(poly[i].x);
    out += ',';
    out += format_g17(poly[i].y);
    out += ']';
  }
  out += "]}";
  return out;
}

inline PolyContour contour_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
    throw io_error("contour: expected {\"points\": [[x,y],...]}");
  PolyContour poly;
  for (const auto& p : j["points"]) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      throw io_error("contour: each point must be [x,y]");
    poly.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  return poly;
}

inline PolyContour parse_contour(const std::string& text) {
  return contour_from_json(nlohmann::json::parse(text));
}

// ---- Fourier descriptions ----

inline std::string fourier_to_json(const FourierContour& fc) {
  std::string out = "{\"period\":";
  out += format_g17(fc.period);
  out += ",\"coeffs\":{";
  for (int s = 0; s < 2; ++s) {
    out += s == 0 ? "\"s1\":[" : ",\"s2\":[";
    const auto& half = fc.coeffs[static_cast<std::size_t>(s)];
    for (std::size_t m = 0; m < half.size(); ++m) {
      if (m) out += ',';
      out += '[';
      out += format_g17(half[m].real());
      out += ',';
      out += format_g17(half[m].imag());
      out += ']';
    }
    out += ']';
  }
  out += "}}";
  return out;
}

inline FourierContour fourier_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("period") || !j.contains("coeffs"))
    throw io_error("fourier contour: expected {\"period\", \"coeffs\"}");
  FourierContour fc;
  fc.period = j["period"].get<double>();
  const auto& c = j["coeffs"];
  const std::array<const char*, 2> keys{"s1", "s2"};
  for (int s = 0; s < 2; ++s) {
    if (!c.contains(keys[static_cast<std::size_t>(s)]))
      throw io_error("fourier contour: missing component " + std::string(keys[static_cast<std::size_t>(s)]));
    for (const auto& pair : c[keys[static_cast<std::size_t>(s)]]) {
      if (!pair.is_array() || pair.size() != 2)
        throw io_error("fourier contour: coefficients must be [re,im]");
      fc.coeffs[static_cast<std::size_t>(s)].emplace_back(pair[0].get<double>(),
                                                          pair[1].get<double>());
    }
  }
  if (fc.coeffs[0].size() != fc.coeffs[1].size())
    throw io_error("fourier contour: component lengths differ");
  return fc;
}

inline FourierContour parse_fourier(const std::string& text) {
  return fourier_from_json(nlohmann::json::parse(text));
}

// ---- plain coefficient pairs and pyramid output (CLI transform schema) ----

struct CoeffComponents {
  std::array<std::vector<double>, 2> s;
};

inline std::string components_to_json(const CoeffComponents& c) {
  std::string out = "{\"s1\":";
  detail::append_array(out, c.s[0]);
  out += ",\"s2\":";
  detail::append_array(out, c.s[1]);
  out += '}';
  return out;
}

inline CoeffComponents components_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("s1") || !j.contains("s2"))
    throw io_error("coefficients: expected {\"s1\": [...], \"s2\": [...]}");
  CoeffComponents c;
  c.s[0] = detail::number_array(j["s1"], "s1");
  c.s[1] = detail::number_array(j["s2"], "s2");
  return c;
}

struct PyramidFile {
  std::string wavelet;
  int top = 0;
  int bottom = 0;
  std::array<PyramidDecomposition, 2> components;
};

inline std::string pyramid_to_json(const PyramidFile& p) {
  std::string out = "{\"wavelet\":\"" + p.wavelet + "\",\"top\":" + std::to_string(p.top) +
                    ",\"bottom\":" + std::to_string(p.bottom) + ",\"components\":{";
  for (int s = 0; s < 2; ++s) {
    out += s == 0 ? "\"s1\":{" : ",\"s2\":{";
    const auto& dec = p.components[static_cast<std::size_t>(s)];
    out += "\"coarsest\":";
    detail::append_array(out, dec.coarsest.values());
    out += ",\"details\":[";
    for (std::size_t i = 0; i < dec.details.size(); ++i) {
      if (i) out += ',';
      detail::append_array(out, dec.details[i].values());
    }
    out += "]}";
  }
  out += "}}";
  return out;
}

inline PyramidFile pyramid_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("wavelet") || !j.contains("top") || !j.contains("bottom") ||
      !j.contains("components"))
    throw io_error("pyramid: expected {wavelet, top, bottom, components}");
  PyramidFile p;
  p.wavelet = j["wavelet"].get<std::string>();
  p.top = j["top"].get<int>();
  p.bottom = j["bottom"].get<int>();
  const std::array<const char*, 2> keys{"s1", "s2"};
  for (int s = 0; s < 2; ++s) {
    const auto& comp = j["components"][keys[static_cast<std::size_t>(s)]];
    if (!comp.is_object() || !comp.contains("coarsest") || !comp.contains("details"))
      throw io_error("pyramid: component needs coarsest and details");
    auto& dec = p.components[static_cast<std::size_t>(s)];
    dec.top_level = p.top;
    dec.bottom_level = p.bottom;
    dec.coarsest = PeriodicSignal(detail::number_array(comp["coarsest"], "coarsest"));
    for (const auto& d : comp["details"])
      dec.details.emplace_back(detail::number_array(d, "detail"));
  }
  return p;
}

// ---- ground-truth records and dataset files ----

inline std::string record_to_json_line(const GroundTruthRecord& rec) {
  std::string out = "{\"id\":\"" + rec.id + "\",\"wavelet\":\"" + rec.wavelet +
                    "\",\"j0\":" + std::to_string(rec.j0) + ",\"j1\":" + std::to_string(rec.j1) +
                    ",\"j2\":" + std::to_string(rec.j2) +
                    ",\"presence\":" + std::to_string(rec.presence);
  out += ",\"arc_length\":";
  out += format_g17(rec.arc_length);
  out += ",\"center_shift\":[";
  out += format_g17(rec.center_shift.x);
  out += ',';
  out += format_g17(rec.center_shift.y);
  out += ']';
  if (rec.presence) {
    for (const char* key : {"approx", "detail"}) {
      const auto& store = key[0] == 'a' ? rec.approx : rec.detail;
      out += ",\"";
      out += key;
      out += "\":{";
      for (int s = 0; s < 2; ++s) {
        out += s == 0 ? "\"s1\":[" : ",\"s2\":[";
        for (std::size_t i = 0; i < store[static_cast<std::size_t>(s)].size(); ++i) {
          if (i) out += ',';
          detail::append_array(out, store[static_cast<std::size_t>(s)][i].values());
        }
        out += ']';
      }
      out += '}';
    }
  }
  out += '}';
  return out;
}

inline GroundTruthRecord record_from_json(const nlohmann::json& j) {
  GroundTruthRecord rec;
  try {
    rec.id = j.at("id").get<std::string>();
    rec.wavelet = j.at("wavelet").get<std::string>();
    rec.j0 = j.at("j0").get<int>();
    rec.j1 = j.at("j1").get<int>();
    rec.j2 = j.at("j2").get<int>();
    rec.presence = j.at("presence").get<int>();
    rec.arc_length = j.at("arc_length").get<double>();
    const auto cs = detail::number_array(j.at("center_shift"), "center_shift");
    if (cs.size() != 2) throw io_error("center_shift must be [x,y]");
    rec.center_shift = {cs[0], cs[1]};
    if (!rec.presence) return rec;
    const std::array<const char*, 2> keys{"s1", "s2"};
    for (int s = 0; s < 2; ++s) {
      for (const auto& v : j.at("approx").at(keys[static_cast<std::size_t>(s)]))
        rec.approx[static_cast<std::size_t>(s)].emplace_back(
            detail::number_array(v, "approx"));
      for (const auto& v : j.at("detail").at(keys[static_cast<std::size_t>(s)]))
        rec.detail[static_cast<std::size_t>(s)].emplace_back(
            detail::number_array(v, "detail"));
    }
  } catch (const nlohmann::json::exception& e) {
    throw io_error(std::string("record: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw io_error("record " + rec.id + ": " + e.what());
  }
  const std::size_t want_a = static_cast<std::size_t>(rec.j2 - rec.j0 + 1);
  const std::size_t want_d = static_cast<std::size_t>(rec.j1 - rec.j0);
  for (int s = 0; s < 2; ++s) {
    if (rec.approx[static_cast<std::size_t>(s)].size() != want_a ||
        rec.detail[static_cast<std::size_t>(s)].size() != want_d)
      throw io_error("record " + rec.id + ": level count does not match (j0,j1,j2)");
    for (std::size_t i = 0; i < rec.approx[static_cast<std::size_t>(s)].size(); ++i)
      if (rec.approx[static_cast<std::size_t>(s)][i].size() !=
          (std::size_t{1} << (rec.j0 + static_cast<int>(i))))
        throw io_error("record " + rec.id + ": approx length is not 2^level");
    for (std::size_t i = 0; i < rec.detail[static_cast<std::size_t>(s)].size(); ++i)
      if (rec.detail[static_cast<std::size_t>(s)][i].size() !=
          (std::size_t{1} << (rec.j0 + static_cast<int>(i))))
        throw io_error("record " + rec.id + ": detail length is not 2^level");
  }
  return rec;
}

struct DatasetHeader {
  std::string schema = "wavecurve-dataset-v1";
  PipelineConfig config;
  Point center{0.0, 0.0};
  std::size_t count = 0;
};

inline std::string header_to_json_line(const DatasetHeader& h) {
  std::string out = "{\"schema\":\"" + h.schema + "\",\"wavelet\":\"" + h.config.wavelet +
                    "\",\"j0\":" + std::to_string(h.config.j0) +
                    ",\"j1\":" + std::to_string(h.config.j1) +
                    ",\"j2\":" + std::to_string(h.config.j2) +
                    ",\"fourier_N\":" + std::to_string(h.config.fourier_N) + ",\"eps\":";
  out += format_g17(h.config.eps);
  out += ",\"delta\":";
  out += format_g17(h.config.delta);
  out += ",\"center\":[";
  out += format_g17(h.center.x);
  out += ',';
  out += format_g17(h.center.y);
  out += "],\"count\":" + std::to_string(h.count) + "}";
  return out;
}

inline DatasetHeader header_from_json(const nlohmann::json& j) {
  DatasetHeader h;
  try {
    h.schema = j.at("schema").get<std::string>();
    if (h.schema != "wavecurve-dataset-v1") throw io_error("unknown schema '" + h.schema + "'");
    h.config.wavelet = j.at("wavelet").get<std::string>();
    h.config.j0 = j.at("j0").get<int>();
    h.config.j1 = j.at("j1").get<int>();
    h.config.j2 = j.at("j2").get<int>();
    h.config.fourier_N = j.at("fourier_N").get<std::size_t>();
    h.config.eps = j.at("eps").get<double>();
    h.config.delta = j.at("delta").get<double>();
    const auto c = detail::number_array(j.at("center"), "center");
    if (c.size() != 2) throw io_error("center must be [x,y]");
    h.center = {c[0], c[1]};
    h.count = j.at("count").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw io_error(std::string("dataset header: ") + e.what());
  }
  return h;
}

struct Dataset {
  DatasetHeader header;
  std::vector<GroundTruthRecord> records;
};

inline void write_dataset(const Dataset& ds, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw io_error("cannot open for writing: " + path);
  f << header_to_json_line(ds.header) << '\n';
  for (const auto& rec : ds.records) f << record_to_json_line(rec) << '\n';
  if (!f) throw io_error("write failed: " + path);
}

inline Dataset read_dataset(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw io_error("cannot open: " + path);
  Dataset ds;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(f, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      if (line_no == 1)
        ds.header = header_from_json(j);
      else
        ds.records.push_back(record_from_json(j));
    } catch (const std::exception& e) {
      throw io_error(path + " line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (line_no == 0) throw io_error(path + ": empty dataset file");
  return ds;
}

// ---- masks as binary PGM ----

inline void write_pgm(const BinaryMask& mask, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw io_error("cannot open for writing: " + path);
  f << "P5\n" << mask.width << ' ' << mask.height << "\n255\n";
  std::vector<std::uint8_t> row(mask.width);
  for (std::size_t y = 0; y < mask.height; ++y) {
    for (std::size_t x = 0; x < mask.width; ++x)
      row[x] = mask.pixels[y * mask.width + x] ? 255 : 0;
    f.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
  }
  if (!f) throw io_error("write failed: " + path);
}

inline BinaryMask read_pgm(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw io_error("cannot open: " + path);
  std::string magic;
  f >> magic;
  if (magic != "P5") throw io_error(path + ": not a binary PGM (P5) file");
  std::size_t w = 0, h = 0;
  unsigned maxval = 0;
  f >> w >> h >> maxval;
  if (!f || w == 0 || h == 0 || maxval == 0 || maxval > 255)
    throw io_error(path + ": bad PGM header");
  f.get();  // single whitespace byte after the header
  BinaryMask mask(w, h);
  std::vector<char> raw(w * h);
  f.read(raw.data(), static_cast<std::streamsize>(raw.size()));
  if (f.gcount() != static_cast<std::streamsize>(raw.size()))
    throw io_error(path + ": truncated pixel data");
  for (std::size_t i = 0; i < raw.size(); ++i)
    mask.pixels[i] = static_cast<std::uint8_t>(raw[i]) ? 1 : 0;
  return mask;
}

// Small helpers shared by the tools.
inline std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw io_error("cannot open: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw io_error("cannot open for writing: " + path);
  f << text;
  if (!f) throw io_error("write failed: " + path);
}

}  // namespace wavecurve
