#include "jsonio.hpp"

#include <fstream>

namespace hc {

using nlohmann::ordered_json;

namespace {

ordered_json complex_pair(Complex z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json vec_to_json(const CVec& v) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(complex_pair(v[i]));
  return a;
}

CVec vec_from_json(const ordered_json& a) {
  CVec v(a.size());
  for (size_t i = 0; i < a.size(); ++i)
    v[static_cast<Eigen::Index>(i)] =
        Complex(a[i].at(0).get<double>(), a[i].at(1).get<double>());
  return v;
}

}  // namespace

ordered_json result_to_json(const SolveResult& r) {
  ordered_json j;
  j["seed"] = r.seed;
  j["gamma"] = complex_pair(r.gamma);
  j["n_paths"] = r.n_paths;
  j["n_failed"] = r.n_failed;
  j["n_at_infinity"] = r.n_at_infinity;
  j["runtime_seconds"] = r.runtime_seconds;
  ordered_json sols = ordered_json::array();
  for (const Solution& s : r.solutions) {
    ordered_json js;
    js["x"] = vec_to_json(s.x);
    js["residual"] = s.residual;
    js["winding_number"] = s.winding_number;
    js["is_real"] = s.is_real;
    js["is_singular"] = s.is_singular;
    js["at_infinity"] = s.at_infinity;
    js["path_index"] = s.path_index;
    sols.push_back(std::move(js));
  }
  j["solutions"] = std::move(sols);
  return j;
}

SolveResult result_from_json(const ordered_json& j) {
  SolveResult r;
  r.seed = j.at("seed").get<std::uint64_t>();
  r.gamma = Complex(j.at("gamma").at(0).get<double>(), j.at("gamma").at(1).get<double>());
  r.n_paths = j.at("n_paths").get<std::uint64_t>();
  r.n_failed = j.at("n_failed").get<int>();
  if (j.contains("n_at_infinity")) r.n_at_infinity = j.at("n_at_infinity").get<int>();
  r.runtime_seconds = j.at("runtime_seconds").get<double>();
  for (const ordered_json& js : j.at("solutions")) {
    Solution s;
    s.x = vec_from_json(js.at("x"));
    s.residual = js.at("residual").get<double>();
    s.winding_number = js.at("winding_number").get<int>();
    s.is_real = js.at("is_real").get<bool>();
    s.is_singular = js.at("is_singular").get<bool>();
    s.at_infinity = js.at("at_infinity").get<bool>();
    s.path_index = js.at("path_index").get<int>();
    r.solutions.push_back(std::move(s));
  }
  return r;
}

std::vector<CVec> starts_from_json(const ordered_json& j) {
  std::vector<CVec> starts;
  if (j.is_array()) {
    for (const ordered_json& p : j) starts.push_back(vec_from_json(p));
    return starts;
  }
  if (j.contains("starts")) {
    for (const ordered_json& p : j.at("starts")) starts.push_back(vec_from_json(p));
    return starts;
  }
  if (j.contains("solutions")) {
    for (const ordered_json& js : j.at("solutions")) {
      CVec z = vec_from_json(js.at("x"));
      CVec lifted(z.size() + 1);
      lifted[0] = Complex(1.0, 0.0);
      lifted.tail(z.size()) = z;
      starts.push_back(std::move(lifted));
    }
    return starts;
  }
  throw std::runtime_error("starts file: expected 'starts', 'solutions', or an array");
}

std::vector<CVec> parse_starts_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open starts file: " + path);
  ordered_json j = ordered_json::parse(in);
  return starts_from_json(j);
}

}  // namespace hc
