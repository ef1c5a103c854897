#ifndef HEIS_IO_HPP
#define HEIS_IO_HPP

// JSON and CSV encoding of library results, generator words and action
// specification files.

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "heis/covering.hpp"
#include "heis/ergodic.hpp"
#include "heis/group.hpp"
#include "heis/rational.hpp"
#include "heis/separation.hpp"

namespace heis {

inline constexpr const char* kVersion = "0.1.0";

using Json = nlohmann::ordered_json;

inline Json to_json(const LatticePoint& p) { return Json{{"a", p.a}, {"b", p.b}, {"m", p.m}}; }

inline Json to_json(const ContinuousPoint& p) {
  Json re = Json::array(), im = Json::array();
  for (const auto& c : p.z) {
    re.push_back(c.real());
    im.push_back(c.imag());
  }
  return Json{{"re", re}, {"im", im}, {"tau", p.tau}};
}

inline Json to_json(const Rational& q) { return Json{{"exact", to_string(q)}, {"value", to_double(q)}}; }

inline Json to_json(const Checklist& c) {
  Json out = Json::array();
  for (const auto& k : c) out.push_back(Json{{"clause", k.clause}, {"pass", k.pass}, {"detail", k.detail}});
  return out;
}

inline Json to_json(const LatticeBall& b) { return Json{{"center", to_json(b.center)}, {"radius_sq", b.radius_sq}}; }

inline Json to_json(const ChainConfig& c) {
  Json pts = Json::array();
  for (const auto& p : c.points) pts.push_back(to_json(p));
  return Json{{"points", pts}, {"radii", c.radii}, {"thicknesses", c.thick}, {"R", c.R}};
}

/// Comma-separated generators e<j>, ie<j> with optional ^-1, multiplied left
/// to right. The empty word is the identity.
inline LatticePoint parse_word(std::size_t n, const std::string& word) {
  LatticePoint out = LatticePoint::identity(n);
  std::stringstream ss(word);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    bool inv = false;
    if (tok.size() > 3 && tok.compare(tok.size() - 3, 3, "^-1") == 0) {
      inv = true;
      tok.resize(tok.size() - 3);
    }
    bool re = true;
    std::size_t pos = 0;
    if (tok.rfind("ie", 0) == 0) {
      re = false;
      pos = 2;
    } else if (tok.rfind("e", 0) == 0) {
      pos = 1;
    } else {
      throw std::invalid_argument("parse_word: bad token '" + tok + "'");
    }
    const std::string idx = tok.substr(pos);
    if (idx.empty() || idx.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("parse_word: bad index in '" + tok + "'");
    const std::size_t j = std::stoul(idx);
    if (j < 1 || j > n) throw std::invalid_argument("parse_word: generator index out of range in '" + tok + "'");
    LatticePoint g = LatticePoint::generator(n, j - 1, re);
    if (inv) g = inverse(g);
    out = multiply(out, g);
  }
  return out;
}

/// {type: "quotient", n, m, masses: "uniform" | "linear" | [rationals]}
/// or {type: "torus", n, alpha: [2n reals], resolution}.
inline WeightedAction action_from_json(const Json& j) {
  const std::string type = j.at("type").get<std::string>();
  const std::size_t n = j.at("n").get<std::size_t>();
  if (type == "quotient") {
    const std::int64_t M = j.at("m").get<std::int64_t>();
    std::vector<Rational> masses;
    if (j.contains("masses")) {
      const Json& m = j.at("masses");
      if (m.is_string()) {
        if (m.get<std::string>() == "linear") {
          WeightedAction probe;
          probe.n = n;
          probe.modulus = M;
          masses = linear_masses(probe.image_size());
        } else if (m.get<std::string>() != "uniform") {
          throw std::invalid_argument("action spec: masses must be uniform, linear or a list");
        }
      } else {
        for (const auto& v : m) masses.push_back(parse_rational(v.is_string() ? v.get<std::string>() : v.dump()));
      }
    }
    return make_quotient_action(n, M, std::move(masses));
  }
  if (type == "torus")
    return make_torus_action(n, j.at("alpha").get<std::vector<double>>(), j.at("resolution").get<std::int64_t>());
  throw std::invalid_argument("action spec: unknown type '" + type + "'");
}

inline WeightedAction load_action(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open action spec " + path);
  return action_from_json(Json::parse(in));
}

/// Table with a header row; values are written as given.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string str(const std::vector<std::string>& preamble = {}) const {
    std::ostringstream os;
    for (const auto& line : preamble) os << "# " << line << '\n';
    auto put = [&os](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
      os << '\n';
    };
    put(header);
    for (const auto& r : rows) put(r);
    return os.str();
  }
};

/// Round-trip decimal form of a double.
inline std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace heis

#endif  // HEIS_IO_HPP
