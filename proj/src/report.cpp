#include "gennum/report.hpp"

#include <sstream>

namespace gennum::report {

namespace {

json mat_json(const Mat& m) {
  json rows = json::array();
  for (Int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vec_json(const Vec& v) {
  json out = json::array();
  for (Int i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

std::string render_node(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

json make_report(const std::string& command, const json& params) {
  json rep;
  rep["tool"] = kToolName;
  rep["version"] = kVersion;
  rep["schema"] = 1;
  rep["command"] = command;
  rep["params"] = params;
  rep["results"] = json::array();
  return rep;
}

json cert_json(const catalog::Certificate& c) {
  json out;
  out["mode"] = c.mode == catalog::CertMode::Exact ? "Exact" : "Heuristic";
  out["max_index_exp"] = c.m;
  out["precision"] = c.K;
  return out;
}

json witness_json(const verify::WitnessInfo& w) {
  json out;
  out["index_exp"] = w.index_exp;
  out["d_found"] = w.d_found;
  out["d_expected"] = w.d_expected;
  json gens = json::array();
  for (const auto& [m, v] : w.gens) {
    json g;
    g["m"] = mat_json(m);
    g["v"] = vec_json(v);
    gens.push_back(std::move(g));
  }
  out["generators"] = std::move(gens);
  return out;
}

json verdict_json(const verify::Verdict& v) {
  json out;
  out["pass"] = v.pass;
  out["certificate"] = cert_json(v.cert);
  out["d"] = v.d_top;
  out["subgroups"] = v.subgroups;
  if (v.witness) out["witness"] = witness_json(*v.witness);
  return out;
}

json defect_json(const verify::DefectReport& r) {
  json out;
  out["certificate"] = cert_json(r.cert);
  out["d"] = r.d_top;
  json rows = json::array();
  for (const auto& row : r.rows) {
    json j;
    j["index_exp"] = row.index_exp;
    j["count"] = row.count;
    j["min_d"] = row.min_d;
    j["max_d"] = row.max_d;
    j["schreier_rhs"] = row.schreier_rhs;
    j["free_like"] = row.free_like;
    rows.push_back(std::move(j));
  }
  out["rows"] = std::move(rows);
  return out;
}

json profile_json(const verify::DProfile& r) {
  json out;
  out["certificate"] = cert_json(r.cert);
  out["d"] = r.d_top;
  json rows = json::array();
  for (const auto& row : r.rows) {
    json j;
    j["index_exp"] = row.index_exp;
    json counts = json::array();
    for (const auto& [d, c] : row.d_counts) {
      json e;
      e["d"] = d;
      e["count"] = c;
      counts.push_back(std::move(e));
    }
    j["counts"] = std::move(counts);
    rows.push_back(std::move(j));
  }
  out["rows"] = std::move(rows);
  return out;
}

json oracle_json(const verify::OracleVerdict& v) {
  json out;
  switch (v.kind) {
    case verify::OracleVerdict::Listed: out["classification"] = "Listed"; break;
    case verify::OracleVerdict::NotListed: out["classification"] = "NotListed"; break;
    case verify::OracleVerdict::Unknown: out["classification"] = "Unknown"; break;
  }
  if (v.kind == verify::OracleVerdict::Listed) out["item"] = v.item;
  out["reason"] = v.reason;
  return out;
}

json counts_json(const repdecomp::DecompositionCounts& c) {
  json out;
  out["p"] = c.p;
  out["n"] = c.n;
  out["n1"] = c.n1;
  out["n2"] = c.n2;
  out["n3"] = c.n3;
  out["rational_d"] = repdecomp::rational_d(c);
  out["inequality"] = repdecomp::inequality_check(c);
  try {
    out["label"] = repdecomp::case_label(c);
  } catch (const error&) {
    out["label"] = nullptr;
  }
  return out;
}

json table_json(const std::vector<repdecomp::TableRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    json j;
    j["n1"] = r.n1;
    j["n2"] = r.n2;
    j["n3"] = r.n3;
    j["n"] = r.n;
    j["conditions"] = r.conditions;
    j["label"] = r.label;
    out.push_back(std::move(j));
  }
  return out;
}

json lattice_verdict_json(const lielattice::LatticeVerdict& v) {
  json out;
  out["pass"] = v.pass;
  out["d"] = v.d_top;
  out["sublattices"] = v.sublattices;
  if (v.witness) {
    json w;
    w["basis"] = mat_json(v.witness->basis);
    w["index_exp"] = v.witness->index_exp;
    w["d_found"] = v.witness->d_found;
    w["d_expected"] = v.witness->d_expected;
    out["witness"] = std::move(w);
  }
  return out;
}

std::string render_text(const json& rep) {
  std::ostringstream os;
  os << rep.value("tool", "gennum") << " " << rep.value("version", "");
  if (rep.contains("command")) os << " " << rep["command"].get<std::string>();
  os << "\n";
  if (rep.contains("params") && rep["params"].is_object() && !rep["params"].empty()) {
    os << "params:";
    for (const auto& [k, v] : rep["params"].items()) os << " " << k << "=" << render_node(v);
    os << "\n";
  }
  if (rep.contains("results"))
    for (const auto& res : rep["results"]) {
      os << "\n";
      if (res.contains("spec")) os << "group: " << res["spec"].get<std::string>() << "\n";
      for (const auto& [k, v] : res.items()) {
        if (k == "spec") continue;
        os << "  " << k << ": " << render_node(v) << "\n";
      }
    }
  if (rep.contains("timing")) os << "\ntiming: " << render_node(rep["timing"]) << "\n";
  return os.str();
}

}  // namespace gennum::report
