//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "builtin_rules.h"
#include "fragretro/errors.h"
#include "fragretro/fragmenter.h"

namespace fragretro {
namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos)
      break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s, std::string_view context) {
  if (s.empty())
    throw RuleFormatError("empty number in '" + std::string(context) + "'");
  int v = 0;
  for (char c: s) {
    if (c < '0' || c > '9')
      throw RuleFormatError("bad number in '" + std::string(context) + "'");
    v = v * 10 + (c - '0');
  }
  return v;
}

bool parse_flag(std::string_view s, std::string_view context) {
  if (s == "1")
    return true;
  if (s == "0")
    return false;
  throw RuleFormatError("expected 0 or 1 in '" + std::string(context) + "'");
}

std::optional<BondOrder> order_from_char(char c) {
  switch (c) {
  case '-':
    return BondOrder::kSingle;
  case '=':
    return BondOrder::kDouble;
  case '#':
    return BondOrder::kTriple;
  case ':':
    return BondOrder::kAromatic;
  default:
    return std::nullopt;
  }
}

int element_token(std::string_view sym, std::string_view context) {
  if (sym == "*")
    return kWildcard;
  const std::optional<int> z = element_from_symbol(sym);
  if (!z || *z == kWildcard)
    throw RuleFormatError("unknown element '" + std::string(sym) + "' in '"
                          + std::string(context) + "'");
  return *z;
}

NeighborRequirement parse_neighbor(std::string_view text,
                                   std::string_view context) {
  NeighborRequirement req;
  const std::size_t x = text.find('x');
  if (x != std::string_view::npos) {
    req.count = parse_int(text.substr(0, x), context);
    text.remove_prefix(x + 1);
  }
  if (!text.empty()) {
    if (const auto order = order_from_char(text.back())) {
      req.order = order;
      text.remove_suffix(1);
    }
  }
  req.element = element_token(text, context);
  return req;
}

BondOrder parse_order(std::string_view s) {
  if (s.size() == 1) {
    if (const auto order = order_from_char(s[0]))
      return *order;
  }
  if (s == "single")
    return BondOrder::kSingle;
  if (s == "double")
    return BondOrder::kDouble;
  if (s == "triple")
    return BondOrder::kTriple;
  if (s == "aromatic")
    return BondOrder::kAromatic;
  throw RuleFormatError("unknown bond order '" + std::string(s) + "'");
}

}  // namespace

std::string_view to_string(FragmentMode mode) {
  return mode == FragmentMode::kBricsLike ? "brics_like" : "rbrics_like";
}

std::optional<FragmentMode> fragment_mode_from_string(std::string_view text) {
  if (text == "brics_like")
    return FragmentMode::kBricsLike;
  if (text == "rbrics_like")
    return FragmentMode::kRbricsLike;
  return std::nullopt;
}

AtomEnvironment parse_environment(std::string_view text) {
  AtomEnvironment env;
  const std::vector<std::string_view> fields = split(trim(text), ';');
  if (fields.empty() || fields[0].empty())
    throw RuleFormatError("empty environment");
  if (fields[0] != "*") {
    for (std::string_view sym: split(fields[0], ','))
      env.elements.push_back(element_token(trim(sym), text));
  }
  for (std::size_t i = 1; i < fields.size(); ++i) {
    const std::string_view field = trim(fields[i]);
    const std::size_t eq = field.find('=');
    if (eq == std::string_view::npos)
      throw RuleFormatError("expected key=value in '" + std::string(text) + "'");
    const std::string_view key = field.substr(0, eq);
    const std::string_view value = field.substr(eq + 1);
    if (key == "arom") {
      env.aromatic = parse_flag(value, text);
    } else if (key == "ring") {
      env.in_ring = parse_flag(value, text);
    } else if (key == "sat") {
      env.saturated = parse_flag(value, text);
    } else if (key == "acyl") {
      env.acyl_neighbor = parse_flag(value, text);
    } else if (key == "deg") {
      const std::size_t dash = value.find('-');
      if (dash == std::string_view::npos) {
        env.min_degree = env.max_degree = parse_int(value, text);
      } else {
        env.min_degree = parse_int(value.substr(0, dash), text);
        env.max_degree = parse_int(value.substr(dash + 1), text);
      }
      if (env.min_degree > env.max_degree)
        throw RuleFormatError("empty degree range in '" + std::string(text)
                              + "'");
    } else if (key == "nbr") {
      env.required.push_back(parse_neighbor(value, text));
    } else if (key == "!nbr") {
      env.forbidden.push_back(parse_neighbor(value, text));
    } else {
      throw RuleFormatError("unknown environment key '" + std::string(key)
                            + "'");
    }
  }
  return env;
}

RuleSet parse_rule_table(std::string_view text) {
  RuleSet set;
  std::set<std::string> ids;
  int line_no = 0;
  for (std::string_view line: split(text, '\n')) {
    ++line_no;
    // '#' also spells a triple bond, so only whole-line comments exist.
    line = trim(line);
    if (line.empty() || line.front() == '#')
      continue;
    const std::vector<std::string_view> cols = split(line, '\t');
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (cols[0] == "@pass") {
      if (cols.size() != 2)
        throw RuleFormatError(where + "@pass takes one argument");
      const std::string_view name = trim(cols[1]);
      if (name == "long_chain")
        set.passes.push_back(StructuralPass::kLongChain);
      else if (name == "ring_bridge")
        set.passes.push_back(StructuralPass::kRingBridge);
      else
        throw RuleFormatError(where + "unknown pass '" + std::string(name)
                              + "'");
      continue;
    }
    if (cols.size() != 5)
      throw RuleFormatError(where + "expected 5 tab-separated columns, got "
                            + std::to_string(cols.size()));
    CleavageRule rule;
    rule.rule_id = std::string(trim(cols[0]));
    if (!ids.insert(rule.rule_id).second)
      throw RuleFormatError(where + "duplicate rule id '" + rule.rule_id + "'");
    try {
      rule.left = parse_environment(cols[1]);
      rule.right = parse_environment(cols[2]);
      rule.order = parse_order(trim(cols[3]));
      rule.acyclic_only = parse_flag(trim(cols[4]), line);
    } catch (const RuleFormatError &e) {
      throw RuleFormatError(where + e.what());
    }
    set.rules.push_back(std::move(rule));
  }
  return set;
}

RuleSet load_rule_table(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open rule table '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_rule_table(buf.str());
}

RuleSet default_rule_set(FragmentMode mode) {
  const std::string file = mode == FragmentMode::kBricsLike
                             ? "brics_like.rules"
                             : "rbrics_like.rules";
  if (const char *dir = std::getenv("FRAGRETRO_RULES_DIR");
      dir != nullptr && *dir != '\0')
    return load_rule_table(std::string(dir) + "/" + file);
  return parse_rule_table(mode == FragmentMode::kBricsLike
                            ? internal::kBricsLikeRules
                            : internal::kRbricsLikeRules);
}

}  // namespace fragretro
