#pragma once

// Seed files and JSON encodings of matrices, words and polynomials.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "gca/errors.hpp"
#include "gca/matrix.hpp"
#include "gca/poly.hpp"
#include "gca/seed.hpp"

namespace gca {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Scalars, vectors, matrices, words.

// Integers that fit in 64 bits are JSON numbers; larger ones are decimal strings.
inline json int_to_json(const Integer& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return v.convert_to<std::int64_t>();
  return v.str();
}

inline Integer int_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw ParseError("expected an integer, got " + j.dump());
}

inline json vec_to_json(const Vec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(int_to_json(x));
  return out;
}

inline json matrix_to_json(const IntMatrix& m) {
  json out = json::array();
  for (int i = 0; i < m.rows(); ++i) out.push_back(vec_to_json(m.row(i)));
  return out;
}

// Accepts nested rows or a flat row-major list.
inline IntMatrix matrix_from_json(const json& j, int rows, int cols, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + " must be an array");
  IntMatrix out(rows, cols);
  if (!j.empty() && j[0].is_array()) {
    if (int(j.size()) != rows) throw ParseError(what + " must have " + std::to_string(rows) + " rows");
    for (int i = 0; i < rows; ++i) {
      if (!j[i].is_array() || int(j[i].size()) != cols)
        throw ParseError(what + " row " + std::to_string(i + 1) + " must have " + std::to_string(cols) + " entries");
      for (int c = 0; c < cols; ++c) out(i, c) = int_from_json(j[i][c]);
    }
    return out;
  }
  if (int(j.size()) != rows * cols)
    throw ParseError(what + " must have " + std::to_string(rows * cols) + " entries (" + std::to_string(rows) + "x" +
                     std::to_string(cols) + ")");
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c) out(i, c) = int_from_json(j[i * cols + c]);
  return out;
}

// 1-based directions.
inline json word_to_json(const Word& w) {
  json out = json::array();
  for (int k : w) out.push_back(k + 1);
  return out;
}

// "2,1,2" -> {1, 0, 1}
inline Word parse_word(const std::string& text, int n) {
  Word w;
  if (text.empty()) return w;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int k = 0;
    try {
      k = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw ParseError("word entry '" + item + "' is not an integer");
    }
    if (used != item.size()) throw ParseError("word entry '" + item + "' is not an integer");
    if (k < 1 || k > n) throw ParseError("word entry " + std::to_string(k) + " outside [1," + std::to_string(n) + "]");
    w.push_back(k - 1);
  }
  return w;
}

// ---------------------------------------------------------------------------
// Polynomials as term lists grouped by monomial in the ambient variables:
// {"ambient": {...}, "terms": [{"exponents": [...], "coeff": {"zterms":
// [{"z": [...], "c": ...}]}}]}.

inline json poly_to_json(const LaurentPoly& p) {
  const auto& amb = p.ambient();
  json out;
  out["ambient"] = {{"prefix", amb->prefix()}, {"nvars", amb->nvars()}, {"r", amb->z().r()}};
  std::map<std::vector<std::int32_t>, json> grouped;
  for (const auto& t : p.terms()) {
    std::vector<std::int32_t> xe, ze;
    for (int i = 0; i < amb->nvars(); ++i) xe.push_back(t.exp[i]);
    for (int s = 0; s < amb->z().size(); ++s) ze.push_back(t.exp[amb->nvars() + s]);
    grouped[xe].push_back({{"z", ze}, {"c", int_to_json(t.coeff)}});
  }
  json terms = json::array();
  for (auto& [xe, zterms] : grouped) terms.push_back({{"exponents", xe}, {"coeff", {{"zterms", zterms}}}});
  out["terms"] = terms;
  return out;
}

inline LaurentPoly poly_from_json(const json& j) {
  try {
    const auto& a = j.at("ambient");
    const auto amb = make_ambient(a.at("prefix").get<std::string>(), a.at("nvars").get<int>(),
                                  a.at("r").get<std::vector<int>>());
    std::vector<LaurentPoly::Term> terms;
    for (const auto& t : j.at("terms")) {
      const auto xe = t.at("exponents").get<std::vector<std::int32_t>>();
      if (int(xe.size()) != amb->nvars()) throw ParseError("term exponent has the wrong length");
      for (const auto& zt : t.at("coeff").at("zterms")) {
        const auto ze = zt.at("z").get<std::vector<std::int32_t>>();
        if (int(ze.size()) != amb->z().size()) throw ParseError("z exponent has the wrong length");
        Exponents e(amb->width());
        for (int i = 0; i < amb->nvars(); ++i) e[i] = xe[i];
        for (int s = 0; s < amb->z().size(); ++s) e[amb->nvars() + s] = ze[s];
        terms.push_back({e, int_from_json(zt.at("c"))});
      }
    }
    return LaurentPoly::from_terms(amb, std::move(terms));
  } catch (const json::exception& e) {
    throw ParseError(std::string("polynomial: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Seed files.

struct SeedSpec {
  MutationData md;
  IntMatrix bt;
  Vec D;
  std::string coefficients;
  std::optional<IntMatrix> lambda;
  std::optional<IntMatrix> bsq_completion;
  std::string source;

  // The configured compatible pair, unvalidated; D is read off the
  // diagonal of Btilde^T Lambda.
  std::optional<CompatiblePair> compatible_pair() const {
    if (!lambda) return std::nullopt;
    const IntMatrix prod = bt.transpose() * *lambda;
    Vec d;
    for (int i = 0; i < md.n(); ++i) d.push_back(prod(i, i));
    return CompatiblePair(md, bt, *lambda, d);
  }
};

namespace detail {

struct TextPos {
  int line = 1;
  int col = 1;
};

inline TextPos position_at(const std::string& text, std::size_t offset) {
  TextPos p;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.col = 1;
    } else {
      ++p.col;
    }
  }
  return p;
}

// Offsets of the keys of the outermost object.
inline std::map<std::string, std::size_t> top_level_keys(const std::string& text) {
  std::map<std::string, std::size_t> out;
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '{' || c == '[') ++depth;
    if (c == '}' || c == ']') --depth;
    if (c != '"') continue;
    const std::size_t start = i;
    std::string s;
    for (++i; i < text.size() && text[i] != '"'; ++i) {
      if (text[i] == '\\' && i + 1 < text.size()) ++i;
      s += text[i];
    }
    std::size_t j = i + 1;
    while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (depth == 1 && j < text.size() && text[j] == ':' && !out.count(s)) out[s] = start;
  }
  return out;
}

}  // namespace detail

inline SeedSpec parse_seed(const std::string& text, const std::string& source = "<seed>") {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto p = detail::position_at(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError(source + ":" + std::to_string(p.line) + ":" + std::to_string(p.col) + ": malformed JSON");
  }
  if (!j.is_object()) throw ParseError(source + ":1:1: seed file must be a JSON object");
  const auto keys = detail::top_level_keys(text);
  auto where = [&](const std::string& key) {
    const auto it = keys.find(key);
    const auto p = detail::position_at(text, it == keys.end() ? 0 : it->second);
    return source + ":" + std::to_string(p.line) + ":" + std::to_string(p.col) + ": ";
  };
  static const std::vector<std::string> known{"n", "m", "r", "B", "coefficients", "Lambda", "Bsq_completion"};
  for (const auto& [key, value] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end()) throw ParseError(where(key) + "unknown key '" + key + "'");
  for (const char* key : {"n", "r", "B"})
    if (!j.contains(key)) throw ParseError(source + ":1:1: missing required key '" + key + "'");

  SeedSpec spec;
  spec.source = source;
  auto field = [&](const std::string& key, auto&& fn) {
    try {
      fn(j.at(key));
    } catch (const ParseError& e) {
      throw ParseError(where(key) + e.what());
    } catch (const Error& e) {
      throw ParseError(where(key) + e.what());
    } catch (const json::exception&) {
      throw ParseError(where(key) + "'" + key + "' has the wrong type");
    }
  };
  int n = 0, m = 0;
  std::vector<int> r;
  field("n", [&](const json& v) {
    if (!v.is_number_integer() || v.get<int>() < 1) throw ParseError("n must be a positive integer");
    n = v.get<int>();
  });
  spec.coefficients = "explicit";
  if (j.contains("coefficients")) field("coefficients", [&](const json& v) {
      spec.coefficients = v.get<std::string>();
      if (spec.coefficients != "principal" && spec.coefficients != "explicit")
        throw ParseError("coefficients must be \"principal\" or \"explicit\"");
    });
  const bool principal = spec.coefficients == "principal";
  m = principal ? 2 * n : n;
  if (j.contains("m")) field("m", [&](const json& v) {
      if (!v.is_number_integer() || v.get<int>() < n) throw ParseError("m must be an integer with m >= n");
      m = v.get<int>();
      if (principal && m != 2 * n) throw ParseError("principal coefficients need m = 2n");
    });
  field("r", [&](const json& v) {
    r = v.get<std::vector<int>>();
    spec.md = MutationData(n, m, r);
  });
  field("B", [&](const json& v) {
    if (principal) {
      const IntMatrix b = matrix_from_json(v, n, n, "B");
      spec.bt = IntMatrix(m, n);
      for (int i = 0; i < n; ++i)
        for (int c = 0; c < n; ++c) {
          spec.bt(i, c) = b(i, c);
          spec.bt(n + i, c) = i == c;
        }
    } else {
      spec.bt = matrix_from_json(v, m, n, "B");
    }
    spec.D = validate(spec.md, spec.bt);
  });
  if (j.contains("Lambda")) field("Lambda", [&](const json& v) { spec.lambda = matrix_from_json(v, m, m, "Lambda"); });
  if (j.contains("Bsq_completion"))
    field("Bsq_completion", [&](const json& v) { spec.bsq_completion = matrix_from_json(v, m, m - n, "Bsq_completion"); });
  if (principal && !spec.lambda) {
    const CompatiblePair cp = CompatiblePair::principal(spec.bt.top_left(n, n), r);
    spec.lambda = cp.Lambda();
  }
  return spec;
}

inline SeedSpec load_seed_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open seed file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_seed(ss.str(), path);
}

inline json seed_to_json(const Seed& s) {
  json out;
  out["Btilde"] = matrix_to_json(s.Btilde());
  json xs = json::array();
  for (const auto& x : s.x()) xs.push_back(to_string(x));
  out["x"] = xs;
  return out;
}

}  // namespace gca
