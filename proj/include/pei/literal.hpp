#pragma once

#include <cctype>
#include <sstream>

#include "pei/set.hpp"

// Compact literal grammar for atoms: `[0+,0+]` is the standard quadrant,
// `[5,3+]` the ray {(5,y) : y >= 3}, `[0..2]` the range {0,1,2}, `[free]`
// all of Z on that axis, `[(-1)-]` the down-ray from -1.

namespace pei {

namespace detail {

inline coord_t parse_int(const std::string& tok, size_t& i) {
  bool paren = i < tok.size() && tok[i] == '(';
  if (paren) ++i;
  size_t start = i;
  if (i < tok.size() && (tok[i] == '-' || tok[i] == '+')) ++i;
  while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) ++i;
  if (start == i) throw std::invalid_argument("atom literal: expected integer in '" + tok + "'");
  coord_t v = std::stoll(tok.substr(start, i - start));
  if (paren) {
    if (i >= tok.size() || tok[i] != ')')
      throw std::invalid_argument("atom literal: unbalanced parenthesis in '" + tok + "'");
    ++i;
  }
  return v;
}

inline Constraint parse_constraint(const std::string& tok) {
  if (tok == "free") return Constraint::free();
  size_t i = 0;
  coord_t a = parse_int(tok, i);
  if (i == tok.size()) return Constraint::fixed(a);
  if (tok[i] == '+' && i + 1 == tok.size()) return Constraint::ray_up(a);
  if (tok[i] == '-' && i + 1 == tok.size()) return Constraint::ray_down(a);
  if (tok.compare(i, 2, "..") == 0) {
    i += 2;
    coord_t b = parse_int(tok, i);
    if (i != tok.size()) throw std::invalid_argument("atom literal: trailing junk in '" + tok + "'");
    return Constraint::range(a, b);
  }
  throw std::invalid_argument("atom literal: cannot parse '" + tok + "'");
}

}  // namespace detail

inline BoxAtom parse_atom(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw std::invalid_argument("atom literal: expected [...] in '" + text + "'");
  std::vector<Constraint> cs;
  std::string body = s.substr(1, s.size() - 2);
  size_t pos = 0;
  while (pos <= body.size()) {
    int depth = 0;
    size_t end = pos;
    while (end < body.size() && (body[end] != ',' || depth > 0)) {
      if (body[end] == '(') ++depth;
      if (body[end] == ')') --depth;
      ++end;
    }
    cs.push_back(detail::parse_constraint(body.substr(pos, end - pos)));
    if (end == body.size()) break;
    pos = end + 1;
  }
  int n = static_cast<int>(cs.size());
  return BoxAtom(n, std::move(cs));
}

inline std::string to_literal(const Constraint& c) {
  auto num = [](coord_t v) {
    if (v < 0) return "(" + std::to_string(v) + ")";
    return std::to_string(v);
  };
  switch (c.kind) {
    case Constraint::Kind::Fixed: return num(c.a);
    case Constraint::Kind::RayUp: return num(c.a) + "+";
    case Constraint::Kind::RayDown: return num(c.a) + "-";
    case Constraint::Kind::Range: return num(c.a) + ".." + num(c.b);
    case Constraint::Kind::Free: return "free";
  }
  return "?";
}

inline std::string to_literal(const BoxAtom& at) {
  std::string s = "[";
  for (int j = 0; j < at.ambient; ++j) {
    if (j) s += ",";
    s += to_literal(at.axes[j]);
  }
  return s + "]";
}

inline std::string to_literal(const OrthohedralSet& s) {
  std::string out = "{";
  for (size_t i = 0; i < s.atoms().size(); ++i) {
    if (i) out += ",";
    out += to_literal(s.atoms()[i]);
  }
  return out + "}";
}

// Parses `{[..],[..]}` or a single atom literal into a set.
inline OrthohedralSet parse_set(const std::string& text, int ambient_hint = -1) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s == "{}" || s.empty()) {
    if (ambient_hint < 0) throw std::invalid_argument("parse_set: empty set needs an ambient hint");
    return OrthohedralSet::empty(ambient_hint);
  }
  std::vector<BoxAtom> atoms;
  if (s.front() == '{') {
    if (s.back() != '}') throw std::invalid_argument("parse_set: expected {...}");
    std::string body = s.substr(1, s.size() - 2);
    size_t pos = 0;
    while (pos < body.size()) {
      size_t end = body.find(']', pos);
      if (end == std::string::npos) throw std::invalid_argument("parse_set: unterminated atom");
      atoms.push_back(parse_atom(body.substr(pos, end - pos + 1)));
      pos = end + 1;
      if (pos < body.size() && body[pos] == ',') ++pos;
    }
  } else {
    atoms.push_back(parse_atom(s));
  }
  int ambient = atoms.empty() ? ambient_hint : atoms[0].ambient;
  return OrthohedralSet::from_atoms(ambient, atoms);
}

}  // namespace pei
