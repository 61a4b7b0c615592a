#include "effham/json_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace effham {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << content;
}

SquareMatrix<cplx> parse_matrix_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("matrix json: ") + e.what());
  }
  if (!j.contains("dim") || !j.contains("entries"))
    throw InputError("matrix json: need 'dim' and 'entries'");
  const std::size_t n = j["dim"].get<std::size_t>();
  if (n == 0) throw InputError("matrix json: dim must be positive");
  const auto& ent = j["entries"];
  if (!ent.is_array() || ent.size() != n * n)
    throw InputError("matrix json: entries must hold dim^2 [re, im] pairs");
  SquareMatrix<cplx> m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const auto& e = ent[i * n + k];
      if (!e.is_array() || e.size() != 2)
        throw InputError("matrix json: each entry is [re, im]");
      m.at(i, k) = cplx(e[0].get<double>(), e[1].get<double>());
    }
  try {
    return make_hermitian(m);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("matrix json: ") + e.what());
  }
}

SquareMatrix<cplx> load_matrix_json(const std::string& path) {
  return parse_matrix_json(read_file(path));
}

namespace {

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void apply_key(CqedParams& p, const std::string& key, const json& v) {
  if (key == "omega1") p.omega1 = v.get<double>();
  else if (key == "omega2") p.omega2 = v.get<double>();
  else if (key == "alpha1") p.alpha1 = v.get<double>();
  else if (key == "alpha2") p.alpha2 = v.get<double>();
  else if (key == "g1") p.g1 = v.get<double>();
  else if (key == "g2") p.g2 = v.get<double>();
  else if (key == "omega_r") p.omega_r = v.get<double>();
  else if (key == "Omega") p.Omega = v.get<double>();
  else if (key == "omega_d") p.omega_d = v.get<double>();
  else if (key == "freq_convention") p.freq_convention = v.get<std::string>();
  else if (key == "levels") {
    p.levels.clear();
    if (v.is_array())
      for (const auto& x : v) p.levels.push_back(x.get<int>());
    else
      p.levels.push_back(v.get<int>());
    for (int lv : p.levels)
      if (lv < 2) throw InputError("config: levels must be >= 2");
  } else {
    throw InputError("config: unknown key '" + key + "'");
  }
}

}  // namespace

std::string matrix_to_json(const SquareMatrix<cplx>& m) {
  std::string out = "{\"dim\":" + std::to_string(m.dim()) + ",\"entries\":[";
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (i || j) out += ',';
      out += '[' + fmt(m.at(i, j).real()) + ',' + fmt(m.at(i, j).imag()) + ']';
    }
  out += "]}";
  return out;
}

CqedParams parse_params_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("config json: ") + e.what());
  }
  CqedParams p;
  for (auto it = j.begin(); it != j.end(); ++it) apply_key(p, it.key(), it.value());
  return p;
}

// Flat TOML subset: `key = value` lines, values being numbers, strings or
// [a, b, c] arrays; '#' comments.
CqedParams parse_params_toml(const std::string& text) {
  CqedParams p;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError("config toml: line " + std::to_string(lineno) +
                       ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    json v;
    if (!val.empty() && val.front() == '"') {
      if (val.size() < 2 || val.back() != '"')
        throw InputError("config toml: unterminated string on line " +
                         std::to_string(lineno));
      v = val.substr(1, val.size() - 2);
    } else if (!val.empty() && val.front() == '[') {
      try {
        v = json::parse(val);  // bracketed numeric arrays parse as JSON
      } catch (const json::exception&) {
        throw InputError("config toml: bad array on line " +
                         std::to_string(lineno));
      }
    } else {
      double d = 0.0;
      auto res = std::from_chars(val.data(), val.data() + val.size(), d);
      if (res.ec != std::errc() || res.ptr != val.data() + val.size())
        throw InputError("config toml: bad number on line " +
                         std::to_string(lineno));
      v = d;
    }
    apply_key(p, key, v);
  }
  return p;
}

CqedParams load_params(const std::string& path) {
  const std::string text = read_file(path);
  const bool toml = path.size() > 5 && path.substr(path.size() - 5) == ".toml";
  if (toml) return parse_params_toml(text);
  return parse_params_json(text);
}

}  // namespace effham
