#pragma once

// Command front end: input parsing, report generation, machine-readable
// output. Output is deterministic across runs and job counts; the JSON
// schema is versioned.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include <json.hpp>

#include "tropdisc/multiplicity_engine.hpp"
#include "tropdisc/real_lift.hpp"
#include "tropdisc/simplex_oracle.hpp"

namespace tropdisc {

using Json = nlohmann::ordered_json;

struct RunConfig {
  enum class Command { Degree, Surfaces, Real, Check };
  enum class Format { Table, Json, Csv };
  Command command = Command::Degree;
  Format format = Format::Table;
  std::optional<int> simplex_d;
  std::optional<std::string> polytope_file;
  int jobs = 1;
  bool verbose = false;
  bool regularity_check = false;
  std::optional<std::string> dump_dir;
};

struct SurfaceReportRow {
  std::string path;
  std::string path_kind;
  int k = 0;
  std::string circuit_type;
  std::vector<LatticePoint> circuit;
  Int mt = 0;
  Int enhancements = 0;
  std::vector<std::pair<std::string, Int>> locations;  // description, lifts
  bool boundary = false;
  std::string rejected;  // empty when counted
};

inline SurfaceReportRow make_row(const SurfaceRecord& rec,
                                 const MultiplicityReport& rep) {
  SurfaceReportRow row;
  row.path = rec.path.name();
  row.path_kind =
      rec.path.kind == MarkedPath::Kind::GammaK ? "gamma_k" : "gamma_k_k1";
  row.k = rec.path.k;
  row.circuit_type = circuit_type_name(rec.circuit.type);
  row.circuit = rec.circuit.points;
  row.mt = rep.mt;
  row.enhancements = rep.enhancements;
  for (const auto& loc : rep.locations)
    row.locations.push_back({loc.describe(), loc.lifts});
  row.boundary = rec.circuit_on_boundary;
  row.rejected = rep.rejection;
  return row;
}

// ---------------------------------------------------------------------------
// Input parsing.

inline Polytope parse_polytope_json(const std::string& text) {
  Json j = Json::parse(text);
  if (!j.contains("vertices") || !j["vertices"].is_array())
    throw std::invalid_argument("polytope file: missing \"vertices\" array");
  std::vector<LatticePoint> verts;
  for (const auto& v : j["vertices"]) {
    if (!v.is_array() || v.size() != 3)
      throw std::invalid_argument("polytope file: vertices must be [x,y,z]");
    LatticePoint p;
    for (int i = 0; i < 3; ++i) {
      if (!v[i].is_number_integer())
        throw std::invalid_argument(
            "polytope file: coordinates mustate be integers");
      p[i] = Int(v[i].get<long long>());
    }
    verts.push_back(p);
  }
  return Polytope::from_vertices(verts);  // validates dimension + lattice
}

inline Polytope parse_polytope(const RunConfig& cfg) {
  if (cfg.simplex_d && cfg.polytope_file)
    throw std::invalid_argument("exactly one polytope source expected");
  if (cfg.simplex_d) return simplex_polytope(*cfg.simplex_d);
  if (!cfg.polytope_file)
    throw std::invalid_argument("no polytope source given");
  std::ifstream in(*cfg.polytope_file);
  if (!in) throw std::invalid_argument("cannot open " + *cfg.polytope_file);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_polytope_json(ss.str());
}

// ---------------------------------------------------------------------------
// Output helpers.

namespace detail {

inline std::string join_points(const std::vector<LatticePoint>& pts) {
  std::string out;
  for (const auto& p : pts) {
    if (!out.empty()) out += ";";
    out += to_string(p);
  }
  return out;
}

inline Json point_json(const LatticePoint& p) {
  return Json::array({p[0].convert_to<long long>(),
                      p[1].convert_to<long long>(),
                      p[2].convert_to<long long>()});
}

inline Json row_json(const SurfaceReportRow& r) {
  Json j;
  j["path"] = r.path;
  j["path_kind"] = r.path_kind;
  j["k"] = r.k;
  j["circuit_type"] = r.circuit_type;
  Json circ = Json::array();
  for (const auto& p : r.circuit) circ.push_back(point_json(p));
  j["circuit"] = circ;
  j["mt"] = r.mt.convert_to<long long>();
  j["enhancements"] = r.enhancements.convert_to<long long>();
  Json locs = Json::array();
  for (const auto& [desc, lifts] : r.locations)
    locs.push_back({{"where", desc}, {"lifts", lifts.convert_to<long long>()}});
  j["locations"] = locs;
  j["boundary"] = r.boundary;
  if (!r.rejected.empty()) j["rejected"] = r.rejected;
  return j;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline void write_rows_csv(std::ostream& os,
                           const std::vector<SurfaceReportRow>& rows) {
  os << "path,k,circuit_type,circuit,mt,enhancements,locations,boundary,"
        "rejected\n";
  for (const auto& r : rows) {
    std::string locs;
    for (const auto& [desc, lifts] : r.locations) {
      if (!locs.empty()) locs += "|";
      locs += desc + ":x" + lifts.str();
    }
    os << r.path << "," << r.k << "," << r.circuit_type << ","
       << csv_escape(join_points(r.circuit)) << "," << r.mt << ","
       << r.enhancements << "," << csv_escape(locs) << ","
       << (r.boundary ? "true" : "false") << "," << r.rejected << "\n";
  }
}

inline void write_rows_table(std::ostream& os,
                             const std::vector<SurfaceReportRow>& rows) {
  os << std::left << std::setw(14) << "path" << std::setw(6) << "type"
     << std::setw(5) << "mt" << std::setw(6) << "enh" << std::setw(10)
     << "locations" << "circuit\n";
  for (const auto& r : rows) {
    std::string tag = r.rejected.empty() ? "" : "  [rejected: " + r.rejected + "]";
    os << std::left << std::setw(14) << r.path << std::setw(6)
       << r.circuit_type << std::setw(5) << r.mt.str() << std::setw(6)
       << r.enhancements.str() << std::setw(10) << r.locations.size()
       << join_points(r.circuit) << tag << "\n";
  }
}

// Subdivision dump: one JSON per surface plus an SVG with the three
// coordinate projections of the cell edges, path edges highlighted.
inline void dump_subdivision(const std::filesystem::path& dir, int index,
                             const OrderedSupport& s, const SurfaceRecord& rec,
                             const MultiplicityReport& rep) {
  std::filesystem::create_directories(dir);
  char name[32];
  std::snprintf(name, sizeof(name), "surface_%03d", index);
  {
    Json j;
    j["schema"] = 1;
    j["path"] = rec.path.name();
    j["circuit_type"] = circuit_type_name(rec.circuit.type);
    Json circ = Json::array();
    for (const auto& p : rec.circuit.points) circ.push_back(point_json(p));
    j["circuit"] = circ;
    Json cells = Json::array();
    for (const auto& c : rec.subdivision.cells) cells.push_back(c);
    j["cells"] = cells;
    Json pedges = Json::array();
    for (const auto& [a, b] : rec.path.edges) pedges.push_back({a, b});
    j["path_edges"] = pedges;
    j["mt"] = rep.mt.convert_to<long long>();
    std::ofstream out(dir / (std::string(name) + ".json"));
    out << j.dump(2) << "\n";
  }
  {
    auto edges = subdivision_edges(rec.subdivision, s.points);
    std::set<std::pair<int, int>> on_path(
        [&] {
          std::set<std::pair<int, int>> e;
          for (auto [a, b] : rec.path.edges) e.insert({a, b});
          return e;
        }());
    const int scale = 40, margin = 30, pane = 6 * scale + 2 * margin;
    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << 3 * pane
        << "' height='" << pane << "'>\n";
    const int proj[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    const char* label[3] = {"xy", "xz", "yz"};
    for (int t = 0; t < 3; ++t) {
      long ox = t * pane + margin;
      svg << "<text x='" << ox << "' y='15' font-size='12'>" << label[t]
          << "</text>\n";
      for (const auto& [a, b] : edges) {
        auto coord = [&](int idx, int axis) {
          return s.points[idx][proj[t][axis]].convert_to<long>() * scale;
        };
        bool highlight = on_path.count({a, b}) > 0;
        svg << "<line x1='" << ox + coord(a, 0) << "' y1='"
            << pane - margin - coord(a, 1) << "' x2='" << ox + coord(b, 0)
            << "' y2='" << pane - margin - coord(b, 1) << "' stroke='"
            << (highlight ? "#d62728" : "#999") << "' stroke-width='"
            << (highlight ? 3 : 1) << "'/>\n";
      }
    }
    svg << "</svg>\n";
    std::ofstream out(dir / (std::string(name) + ".svg"));
    out << svg.str();
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Command driver. Returns the process exit code: 0 success, 1 check
// mismatch, 2 invalid input.

inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == RunConfig::Command::Real ||
        cfg.command == RunConfig::Command::Check) {
      if (!cfg.simplex_d) {
        err << "error: this command is defined for --simplex only\n";
        return 2;
      }
    }
    if (cfg.command == RunConfig::Command::Real) {
      auto rep = real_lower_bound(*cfg.simplex_d);
      if (cfg.format == RunConfig::Format::Json) {
        Json j;
        j["schema"] = 1;
        j["command"] = "real";
        j["d"] = rep.d;
        j["total"] = rep.total.convert_to<long long>();
        j["by_type"] = {{"A", rep.a_count.convert_to<long long>()},
                        {"D", rep.d_count.convert_to<long long>()},
                        {"E", rep.e_count.convert_to<long long>()}};
        j["undecided_mt"] = rep.undecided_mt.convert_to<long long>();
        j["excluded_extra_d"] =
            rep.excluded_extra_d.convert_to<long long>();
        if (cfg.verbose) {
          Json fams = Json::array();
          for (const auto& v : rep.d_families)
            fams.push_back({{"family", static_cast<int>(v.family) + 1},
                            {"i", v.i},
                            {"j", v.j},
                            {"l", v.l},
                            {"real", v.real}});
          j["d_families"] = fams;
        }
        out << j.dump(2) << "\n";
      } else if (cfg.format == RunConfig::Format::Csv) {
        out << "kind,count\nA," << rep.a_count << "\nD," << rep.d_count
            << "\nE," << rep.e_count << "\ntotal," << rep.total
            << "\nundecided_mt," << rep.undecided_mt << "\nexcluded_extra_d,"
            << rep.excluded_extra_d << "\n";
      } else {
        out << "real singular surfaces through the configuration (lower "
               "bound), d = "
            << rep.d << "\n";
        out << "  A: " << rep.a_count << "\n  D: " << rep.d_count
            << "\n  E: " << rep.e_count << "\n  total: " << rep.total << "\n";
        out << "  undecided in-path E mass: " << rep.undecided_mt << "\n";
        out << "  excluded top-edge D mass: " << rep.excluded_extra_d << "\n";
      }
      return 0;
    }
    if (cfg.command == RunConfig::Command::Check) {
      auto rep = cross_check(*cfg.simplex_d, cfg.jobs);
      if (cfg.format == RunConfig::Format::Json) {
        Json j;
        j["schema"] = 1;
        j["command"] = "check";
        j["d"] = rep.oracle.d;
        j["pass"] = rep.pass;
        j["enumerator"] = {
            {"total", rep.enum_total.convert_to<long long>()},
            {"E", rep.enum_by_type[CircuitType::E].convert_to<long long>()},
            {"D", rep.enum_by_type[CircuitType::D].convert_to<long long>()},
            {"A", rep.enum_by_type[CircuitType::A].convert_to<long long>()}};
        j["oracle"] = {{"total", rep.oracle.grand.convert_to<long long>()},
                       {"E", rep.oracle.e_total.convert_to<long long>()},
                       {"D", rep.oracle.d_total.convert_to<long long>()},
                       {"A", rep.oracle.a_total.convert_to<long long>()}};
        j["diffs"] = rep.diffs;
        out << j.dump(2) << "\n";
      } else {
        out << "cross-check d = " << rep.oracle.d << ": "
            << (rep.pass ? "pass" : "FAIL") << "\n";
        out << "  enumerator total " << rep.enum_total << ", oracle "
            << rep.oracle.grand << "\n";
        for (const auto& d : rep.diffs) out << "  diff: " << d << "\n";
      }
      return rep.pass ? 0 : 1;
    }

    Polytope poly = parse_polytope(cfg);
    OrderedSupport s = order_support(poly);
    auto rep = degree(poly, cfg.jobs, cfg.regularity_check);
    std::vector<SurfaceReportRow> rows;
    for (const auto& [rec, m] : rep.surfaces) {
      if (m.mt == 0 && !cfg.verbose &&
          cfg.command == RunConfig::Command::Surfaces)
        continue;
      rows.push_back(make_row(rec, m));
    }
    if (cfg.dump_dir) {
      int index = 0;
      for (const auto& [rec, m] : rep.surfaces)
        detail::dump_subdivision(*cfg.dump_dir, index++, s, rec, m);
    }
    if (cfg.command == RunConfig::Command::Degree) {
      if (cfg.format == RunConfig::Format::Json) {
        Json j;
        j["schema"] = 1;
        j["command"] = "degree";
        j["lattice_points"] = s.size();
        j["N"] = s.N;
        j["degree"] = rep.total.convert_to<long long>();
        Json bt;
        for (auto t : {CircuitType::A, CircuitType::B, CircuitType::C,
                       CircuitType::D, CircuitType::E})
          bt[circuit_type_name(t)] = rep.by_type[t].convert_to<long long>();
        j["by_type"] = bt;
        out << j.dump(2) << "\n";
      } else if (cfg.format == RunConfig::Format::Csv) {
        out << "type,mt\n";
        for (auto t : {CircuitType::A, CircuitType::B, CircuitType::C,
                       CircuitType::D, CircuitType::E})
          out << circuit_type_name(t) << "," << rep.by_type[t] << "\n";
        out << "total," << rep.total << "\n";
      } else {
        out << rep.total << "\n";
        for (auto t : {CircuitType::A, CircuitType::B, CircuitType::C,
                       CircuitType::D, CircuitType::E})
          if (rep.by_type[t] != 0)
            out << "  " << circuit_type_name(t) << ": " << rep.by_type[t]
                << "\n";
      }
      return 0;
    }
    // surfaces
    if (cfg.format == RunConfig::Format::Json) {
      Json j;
      j["schema"] = 1;
      j["command"] = "surfaces";
      j["N"] = s.N;
      Json arr = Json::array();
      for (const auto& r : rows) arr.push_back(detail::row_json(r));
      j["surfaces"] = arr;
      out << j.dump(2) << "\n";
    } else if (cfg.format == RunConfig::Format::Csv) {
      detail::write_rows_csv(out, rows);
    } else {
      detail::write_rows_table(out, rows);
    }
    return 0;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const degeneracy_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace tropdisc
