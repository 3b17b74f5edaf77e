#include "idfnl/model.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include "idfnl/parser.hpp"

namespace idfnl {

std::size_t StateSet::count() const {
  std::size_t c = 0;
  for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::vector<int> StateSet::to_vector() const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(n_); ++i)
    if (test(i)) out.push_back(i);
  return out;
}

Model::Model(std::vector<std::string> states, std::vector<Triple> rel,
             std::map<std::string, std::vector<int>> val)
    : states_(std::move(states)) {
  if (states_.empty()) throw std::invalid_argument("model: state set must be non-empty");
  for (int i = 0; i < size(); ++i) {
    if (!index_.emplace(states_[static_cast<std::size_t>(i)], i).second)
      throw std::invalid_argument("model: duplicate state '" + states_[static_cast<std::size_t>(i)] + "'");
  }
  const int n = size();
  auto check = [&](int s) {
    if (s < 0 || s >= n) throw std::invalid_argument("model: state index out of range");
  };
  for (const Triple& t : rel) {
    check(t.a);
    check(t.b);
    check(t.c);
  }
  std::sort(rel.begin(), rel.end());
  rel.erase(std::unique(rel.begin(), rel.end()), rel.end());
  rel_ = std::move(rel);
  for (auto& [atom, members] : val) {
    StateSet set(static_cast<std::size_t>(n));
    for (int s : members) {
      check(s);
      set.set(s);
    }
    val_.emplace(atom, std::move(set));
  }
}

std::optional<int> Model::state_index(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Model::has_triple(int a, int b, int c) const {
  return std::binary_search(rel_.begin(), rel_.end(), Triple{a, b, c});
}

StateSet Model::valuation(const std::string& atom) const {
  auto it = val_.find(atom);
  if (it != val_.end()) return it->second;
  return StateSet(static_cast<std::size_t>(size()));
}

namespace {

bool valid_identifier(std::string_view s) {
  if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z')) return false;
  for (char c : s)
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) return false;
  return true;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && !(s[j] == ' ' || s[j] == '\t' || s[j] == '\r')) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

Model parse_model(std::string_view text) {
  std::vector<std::string> states;
  std::map<std::string, int> index;
  std::vector<Triple> rel;
  std::map<std::string, std::vector<int>> val;
  bool have_states = false;

  auto lookup = [&](const std::string& id, int line) {
    auto it = index.find(id);
    if (it == index.end())
      throw parse_error("undeclared state '" + id + "'", line, 1);
    return it->second;
  };

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto fields = split_ws(line);
    if (fields.empty()) continue;

    if (fields[0] == "states:") {
      if (have_states) throw parse_error("duplicate 'states:' line", line_no, 1);
      if (fields.size() == 1) throw parse_error("empty state set", line_no, 1);
      for (std::size_t i = 1; i < fields.size(); ++i) {
        if (!valid_identifier(fields[i]))
          throw parse_error("bad state id '" + fields[i] + "'", line_no, 1);
        if (!index.emplace(fields[i], static_cast<int>(states.size())).second)
          throw parse_error("duplicate state declaration '" + fields[i] + "'", line_no, 1);
        states.push_back(fields[i]);
      }
      have_states = true;
      continue;
    }
    if (!have_states)
      throw parse_error("'states:' must be the first line", line_no, 1);
    if (fields[0] == "r:") {
      if (fields.size() != 4)
        throw parse_error("'r:' takes exactly three states", line_no, 1);
      rel.push_back({lookup(fields[1], line_no), lookup(fields[2], line_no), lookup(fields[3], line_no)});
      continue;
    }
    if (fields[0] == "v" && fields.size() >= 2 && fields[1].size() > 1 && fields[1].back() == ':') {
      std::string atom = fields[1].substr(0, fields[1].size() - 1);
      if (!valid_identifier(atom))
        throw parse_error("bad atom name '" + atom + "'", line_no, 1);
      auto& members = val[atom];
      for (std::size_t i = 2; i < fields.size(); ++i)
        members.push_back(lookup(fields[i], line_no));
      continue;
    }
    throw parse_error("malformed line", line_no, 1);
  }
  if (!have_states) throw parse_error("missing 'states:' line", line_no, 1);
  return Model(std::move(states), std::move(rel), std::move(val));
}

std::string render_model(const Model& m) {
  std::ostringstream out;
  out << "states:";
  for (const auto& s : m.states()) out << ' ' << s;
  out << '\n';
  for (const Triple& t : m.triples())
    out << "r: " << m.state_name(t.a) << ' ' << m.state_name(t.b) << ' ' << m.state_name(t.c) << '\n';
  for (const auto& [atom, set] : m.valuations()) {
    out << "v " << atom << ':';
    for (int s : set.to_vector()) out << ' ' << m.state_name(s);
    out << '\n';
  }
  return out.str();
}

}  // namespace idfnl
