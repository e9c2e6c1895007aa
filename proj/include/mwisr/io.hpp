#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "mwisr/instance.hpp"
#include "mwisr/solution.hpp"

namespace mwisr::io {

using nlohmann::json;

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what),
        line(line_) {}
};

namespace detail {

inline int line_of_offset(const std::string& text, std::size_t offset) {
  int line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

inline Rat rat_from(const json& j, const std::string& what) {
  if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
  if (!j.is_object() || !j.contains("num") || !j.contains("den"))
    throw std::runtime_error(what + ": expected integer or {num, den}");
  return Rat(j["num"].get<std::int64_t>(), j["den"].get<std::int64_t>());
}

inline json rat_json(const Rat& r) {
  if (r.is_integer()) return json(r.num());
  return json{{"num", r.num()}, {"den", r.den()}};
}

}  // namespace detail

inline constexpr int kInstanceFileVersion = 1;

// Instance file: {"version", "N", "eps", "delta"?, "rects": [{"id","x1","y1",
// "x2","y2","w_num","w_den"}]}. Weights are exact numerator/denominator
// pairs; parsing rejects malformed input with the offending line.
inline Instance parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(detail::line_of_offset(text, e.byte), e.what());
  }
  try {
    if (!j.contains("version") || j["version"].get<int>() != kInstanceFileVersion)
      throw std::runtime_error("missing or unsupported version");
    Instance inst;
    inst.N = j.at("N").get<int>();
    if (inst.N < 0) throw std::runtime_error("negative N");
    if (j.contains("eps")) {
      inst.eps = detail::rat_from(j["eps"], "eps");
      if (!(Rat(0) < inst.eps && inst.eps < Rat(1)))
        throw std::runtime_error("eps must lie in (0,1)");
    }
    if (j.contains("delta") && !j["delta"].is_null())
      inst.delta = detail::rat_from(j["delta"], "delta");
    for (const auto& rj : j.at("rects")) {
      Rect r;
      r.id = rj.at("id").get<std::int64_t>();
      r.x1 = rj.at("x1").get<int>();
      r.y1 = rj.at("y1").get<int>();
      r.x2 = rj.at("x2").get<int>();
      r.y2 = rj.at("y2").get<int>();
      r.weight = Rat(rj.at("w_num").get<std::int64_t>(),
                     rj.at("w_den").get<std::int64_t>());
      if (r.x1 >= r.x2 || r.y1 >= r.y2)
        throw std::runtime_error("rect " + std::to_string(r.id) +
                                 " is degenerate (x1<x2, y1<y2 required)");
      if (r.weight.is_negative())
        throw std::runtime_error("rect " + std::to_string(r.id) +
                                 " has negative weight");
      inst.rects.push_back(r);
    }
    inst.validate();
    return inst;
  } catch (const json::exception& e) {
    throw ParseError(0, e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, e.what());
  } catch (const std::runtime_error& e) {
    throw ParseError(0, e.what());
  }
}

inline json instance_json(const Instance& inst) {
  json j;
  j["version"] = kInstanceFileVersion;
  j["N"] = inst.N;
  j["eps"] = detail::rat_json(inst.eps);
  if (inst.delta) j["delta"] = detail::rat_json(*inst.delta);
  j["rects"] = json::array();
  for (const auto& r : inst.rects)
    j["rects"].push_back({{"id", r.id},
                          {"x1", r.x1},
                          {"y1", r.y1},
                          {"x2", r.x2},
                          {"y2", r.y2},
                          {"w_num", r.weight.num()},
                          {"w_den", r.weight.den()}});
  return j;
}

inline std::string emit_instance(const Instance& inst) {
  return instance_json(inst).dump(2) + "\n";
}

// FNV-1a over the canonical field serialization; identifies instance content.
inline std::string instance_digest(const Instance& inst) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::int64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= std::uint64_t(v >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(inst.N);
  mix(inst.eps.num());
  mix(inst.eps.den());
  mix(inst.delta ? inst.delta->num() : 0);
  mix(inst.delta ? inst.delta->den() : -1);
  auto sorted = inst.rects;
  std::sort(sorted.begin(), sorted.end(),
            [](const Rect& a, const Rect& b) { return a.id < b.id; });
  for (const auto& r : sorted) {
    mix(r.id);
    mix(r.x1);
    mix(r.y1);
    mix(r.x2);
    mix(r.y2);
    mix(r.weight.num());
    mix(r.weight.den());
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

struct ValidationVerdict {
  std::string name;
  bool pass = true;
  std::string detail;
};

// One run of a command: what ran, on what, and with which outcome. The
// timings object is the only non-deterministic part and is kept separate so
// reports can be compared byte-for-byte without it.
struct RunReport {
  std::string command;
  std::string instance_digest;
  json config = json::object();
  json seeds = json::object();
  json solution;              // null unless a solver ran
  json oracle;                // null unless the oracle ran
  std::optional<Rat> ratio;   // solution / oracle
  std::vector<ValidationVerdict> validations;
  json extras = json::object();
  json timings = json::object();

  bool all_pass() const {
    for (const auto& v : validations)
      if (!v.pass) return false;
    return true;
  }

  json to_json(bool with_timings = true) const {
    json j;
    j["version"] = 1;
    j["command"] = command;
    j["instance_digest"] = instance_digest;
    j["config"] = config;
    j["seeds"] = seeds;
    j["solution"] = solution.is_null() ? json() : solution;
    j["oracle"] = oracle.is_null() ? json() : oracle;
    j["ratio"] = ratio ? detail::rat_json(*ratio) : json();
    j["validations"] = json::array();
    for (const auto& v : validations) {
      json vj{{"name", v.name}, {"pass", v.pass}};
      if (!v.detail.empty()) vj["detail"] = v.detail;
      j["validations"].push_back(vj);
    }
    if (!extras.empty()) j["extras"] = extras;
    if (with_timings) j["timings"] = timings;
    return j;
  }
};

inline json solution_json(const Solution& sol) {
  json j;
  j["weight"] = detail::rat_json(sol.total_weight);
  j["rect_ids"] = json::array();
  for (auto id : sol.rect_ids) j["rect_ids"].push_back(id);
  j["truncated"] = sol.truncated;
  return j;
}

inline json cut_tree_json(const CutNode* n) {
  if (!n) return json();
  json j;
  switch (n->kind) {
    case CutNode::Kind::LeafEmpty:
      j["kind"] = "empty";
      break;
    case CutNode::Kind::LeafMax:
      j["kind"] = "rect";
      j["rect_id"] = n->rect_id;
      break;
    case CutNode::Kind::Partition: {
      j["kind"] = "partition";
      j["op"] = n->op;
      j["parts"] = json::array();
      for (const auto& c : n->parts) j["parts"].push_back(cut_tree_json(c.get()));
      break;
    }
  }
  auto bb = n->region.bounding_box();
  j["region_box"] = {bb[0], bb[1], bb[2], bb[3]};
  j["region_cells"] = n->region.cell_count();
  return j;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace mwisr::io
