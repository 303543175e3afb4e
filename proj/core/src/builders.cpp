#include "hochmod/builders.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace hochmod {

std::size_t check_group_table(const std::vector<std::vector<std::size_t>>& table) {
  const std::size_t n = table.size();
  if (n == 0) throw VerificationError("group table is empty");
  for (const auto& row : table) {
    if (row.size() != n) throw DimensionMismatch("group table is not square");
    for (std::size_t x : row)
      if (x >= n) throw VerificationError("group table entry out of range");
  }
  std::optional<std::size_t> e;
  for (std::size_t i = 0; i < n && !e; ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) ok = table[i][j] == j && table[j][i] == j;
    if (ok) e = i;
  }
  if (!e) throw VerificationError("group table has no identity");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw VerificationError("group table is not associative at (" + std::to_string(a) + "," +
                                  std::to_string(b) + "," + std::to_string(c) + ")");
  for (std::size_t a = 0; a < n; ++a) {
    bool inv = false;
    for (std::size_t b = 0; b < n && !inv; ++b) inv = table[a][b] == *e;
    if (!inv) throw VerificationError("element " + std::to_string(a) + " has no inverse");
  }
  return *e;
}

std::vector<std::vector<std::size_t>> cyclic_group_table(std::size_t n) {
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return t;
}

namespace {

using Perm = std::array<int, 3>;

std::vector<Perm> s3_elements() {
  std::vector<Perm> out;
  Perm p{0, 1, 2};
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

// Composition (pq)(x) = p(q(x)).
std::vector<std::vector<std::size_t>> symmetric_group3_table() {
  auto el = s3_elements();
  std::vector<std::vector<std::size_t>> t(6, std::vector<std::size_t>(6));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      Perm c{};
      for (int x = 0; x < 3; ++x) c[x] = el[i][el[j][x]];
      t[i][j] = std::find(el.begin(), el.end(), c) - el.begin();
    }
  return t;
}

std::vector<std::string> symmetric_group3_labels() {
  std::vector<std::string> out;
  for (const auto& p : s3_elements()) out.push_back("[" + std::to_string(p[0] + 1) + std::to_string(p[1] + 1) +
                                                     std::to_string(p[2] + 1) + "]");
  return out;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"kZ2", "kZ3", "kS3", "sweedler", "D-kZ2", "D-kZ3", "D-sweedler"};
  return names;
}

namespace {

using json = nlohmann::ordered_json;

struct Reader {
  const std::string& source;

  [[noreturn]] void fail(const std::string& where, const std::string& what) const {
    throw ParseError(what, source + ":" + where);
  }

  const json& member(const json& j, const char* key) const {
    auto it = j.find(key);
    if (it == j.end()) fail(key, "missing required key");
    return *it;
  }

  std::size_t index(const json& j, const std::string& where) const {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
      fail(where, "expected a non-negative integer index");
    return j.get<std::size_t>();
  }

  std::string scalar(const json& j, const std::string& where) const {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    fail(where, "expected a scalar string");
  }

  const json& array(const json& j, const std::string& where) const {
    if (!j.is_array()) fail(where, "expected an array");
    return j;
  }

  // Entries of the form [i_1, ..., i_n, "c"].
  template <std::size_t N>
  std::vector<std::pair<std::array<std::size_t, N>, std::string>> entries(const json& j,
                                                                          const std::string& key) const {
    std::vector<std::pair<std::array<std::size_t, N>, std::string>> out;
    array(j, key);
    for (std::size_t n = 0; n < j.size(); ++n) {
      std::string where = key + "[" + std::to_string(n) + "]";
      const json& e = j[n];
      if (!e.is_array() || e.size() != N + 1) fail(where, "expected an array of length " + std::to_string(N + 1));
      std::array<std::size_t, N> idx{};
      for (std::size_t k = 0; k < N; ++k) idx[k] = index(e[k], where);
      out.push_back({idx, scalar(e[N], where)});
    }
    return out;
  }

  std::vector<std::pair<std::size_t, std::string>> vector_entries(const json& j, const std::string& key) const {
    std::vector<std::pair<std::size_t, std::string>> out;
    for (auto& [i, s] : entries<1>(j, key)) out.push_back({i[0], s});
    return out;
  }

  std::vector<std::tuple<std::size_t, std::size_t, std::string>> pair_entries(const json& j,
                                                                             const std::string& key) const {
    std::vector<std::tuple<std::size_t, std::size_t, std::string>> out;
    for (auto& [i, s] : entries<2>(j, key)) out.emplace_back(i[0], i[1], s);
    return out;
  }

  std::vector<std::tuple<std::size_t, std::size_t, std::size_t, std::string>> triple_entries(
      const json& j, const std::string& key) const {
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t, std::string>> out;
    for (auto& [i, s] : entries<3>(j, key)) out.emplace_back(i[0], i[1], i[2], s);
    return out;
  }
};

// Line and column of a byte offset, both 1-based.
std::string position(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

RawPresentation parse_presentation(std::string_view text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // nlohmann reports the offset one past the offending character.
    std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    throw ParseError("malformed JSON", source + ":" + position(text, at));
  }
  Reader r{source};
  if (!doc.is_object()) r.fail("(root)", "expected a JSON object");
  RawPresentation raw;
  raw.source = source;
  const json& field = r.member(doc, "field");
  try {
    if (field.is_string()) {
      raw.field = FieldSpec::parse(field.get<std::string>());
    } else if (field.is_object() && field.size() == 1 && field.contains("Fp")) {
      raw.field = FieldSpec::prime(r.index(field["Fp"], "field.Fp"));
    } else if (field.is_object() && field.size() == 1 && field.contains("cyclotomic")) {
      raw.field = FieldSpec::cyclotomic(r.index(field["cyclotomic"], "field.cyclotomic"));
    } else {
      r.fail("field", "expected \"Q\", {\"Fp\": p} or {\"cyclotomic\": n}");
    }
    raw.field.validate();
  } catch (const InvalidField& e) {
    r.fail("field", e.what());
  }
  raw.dim = r.index(r.member(doc, "dim"), "dim");
  if (raw.dim == 0) r.fail("dim", "dimension must be positive");
  if (auto it = doc.find("labels"); it != doc.end()) {
    r.array(*it, "labels");
    for (std::size_t n = 0; n < it->size(); ++n) {
      if (!(*it)[n].is_string()) r.fail("labels[" + std::to_string(n) + "]", "expected a string");
      raw.labels.push_back((*it)[n].get<std::string>());
    }
    if (raw.labels.size() != raw.dim) r.fail("labels", "expected " + std::to_string(raw.dim) + " labels");
  }
  raw.mult = r.triple_entries(r.member(doc, "mult"), "mult");
  raw.unit = r.vector_entries(r.member(doc, "unit"), "unit");
  raw.comult = r.triple_entries(r.member(doc, "comult"), "comult");
  raw.counit = r.vector_entries(r.member(doc, "counit"), "counit");
  raw.antipode = r.pair_entries(r.member(doc, "antipode"), "antipode");
  if (auto it = doc.find("R"); it != doc.end()) raw.R = r.pair_entries(*it, "R");
  if (auto it = doc.find("v"); it != doc.end()) raw.v = r.vector_entries(*it, "v");
  if (auto it = doc.find("rho"); it != doc.end()) raw.rho = r.vector_entries(*it, "rho");
  return raw;
}

RawPresentation read_presentation(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_presentation(ss.str(), path);
}

std::string write_presentation(const RawPresentation& raw) {
  json doc;
  switch (raw.field.kind) {
    case FieldKind::rationals:
      doc["field"] = "Q";
      break;
    case FieldKind::prime:
      doc["field"] = {{"Fp", raw.field.parameter}};
      break;
    case FieldKind::cyclotomic:
      doc["field"] = {{"cyclotomic", raw.field.parameter}};
      break;
  }
  doc["dim"] = raw.dim;
  if (!raw.labels.empty()) doc["labels"] = raw.labels;
  auto triples = [](const auto& v) {
    json a = json::array();
    for (const auto& [i, j, k, s] : v) a.push_back(json::array({i, j, k, s}));
    return a;
  };
  auto pairs = [](const auto& v) {
    json a = json::array();
    for (const auto& [i, j, s] : v) a.push_back(json::array({i, j, s}));
    return a;
  };
  auto singles = [](const auto& v) {
    json a = json::array();
    for (const auto& [i, s] : v) a.push_back(json::array({i, s}));
    return a;
  };
  doc["mult"] = triples(raw.mult);
  doc["unit"] = singles(raw.unit);
  doc["comult"] = triples(raw.comult);
  doc["counit"] = singles(raw.counit);
  doc["antipode"] = pairs(raw.antipode);
  if (raw.R) doc["R"] = pairs(*raw.R);
  if (raw.v) doc["v"] = singles(*raw.v);
  if (raw.rho) doc["rho"] = singles(*raw.rho);
  return doc.dump(1) + "\n";
}

}  // namespace hochmod
