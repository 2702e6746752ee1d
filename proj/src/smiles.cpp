//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fragretro/errors.h"
#include "fragretro/molgraph.h"

namespace fragretro {
namespace {

struct RingOpening {
  int atom;
  std::optional<BondOrder> order;
  std::size_t position;
};

struct RawBond {
  int a, b;
  BondOrder order;
  bool implicit_aromatic;
};

class SmilesParser {
 public:
  explicit SmilesParser(std::string_view text): text_(text) { }

  Molecule parse();

 private:
  [[noreturn]] void fail(const std::string &what) const {
    throw SyntaxError("SMILES syntax error at position " + std::to_string(pos_)
                      + ": " + what + " in \"" + std::string(text_) + "\"");
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void parse_organic_atom();
  void parse_bracket_atom();
  void parse_ring_bond();
  int add_atom(const Atom &atom, bool implicit);
  void connect(int a, int b, std::optional<BondOrder> order);

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<Atom> atoms_;
  std::vector<bool> implicit_;
  std::vector<RawBond> bonds_;
  int prev_ = -1;
  std::optional<BondOrder> pending_;
  bool have_pending_ = false;
  std::vector<int> branches_;
  std::map<int, RingOpening> rings_;
};

int SmilesParser::add_atom(const Atom &atom, bool implicit) {
  atoms_.push_back(atom);
  implicit_.push_back(implicit);
  const int idx = static_cast<int>(atoms_.size()) - 1;
  if (prev_ >= 0) {
    connect(prev_, idx, pending_);
  } else if (have_pending_) {
    fail("bond symbol without a preceding atom");
  }
  pending_.reset();
  have_pending_ = false;
  prev_ = idx;
  return idx;
}

void SmilesParser::connect(int a, int b, std::optional<BondOrder> order) {
  if (a == b)
    fail("ring closure onto the same atom");
  for (const RawBond &rb: bonds_) {
    if ((rb.a == a && rb.b == b) || (rb.a == b && rb.b == a))
      fail("duplicate bond");
  }
  if (order) {
    bonds_.push_back({ a, b, *order, false });
  } else if (atoms_[a].aromatic && atoms_[b].aromatic) {
    bonds_.push_back({ a, b, BondOrder::kAromatic, true });
  } else {
    bonds_.push_back({ a, b, BondOrder::kSingle, false });
  }
}

void SmilesParser::parse_organic_atom() {
  const char c = peek();
  Atom atom;
  if (c == '*') {
    atom = Atom::attachment();
    ++pos_;
    add_atom(atom, false);
    return;
  }
  std::string symbol(1, c);
  if ((c == 'C' && peek(1) == 'l') || (c == 'B' && peek(1) == 'r'))
    symbol.push_back(peek(1));
  bool aromatic = false;
  if (std::islower(static_cast<unsigned char>(c))) {
    aromatic = true;
    symbol[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  const std::optional<int> z = element_from_symbol(symbol);
  if (!z || !is_organic_subset(*z) || (aromatic && !may_be_aromatic(*z)))
    fail("unknown organic-subset atom '" + std::string(1, c) + "'");
  pos_ += symbol.size();
  atom.element = *z;
  atom.aromatic = aromatic;
  add_atom(atom, true);
}

void SmilesParser::parse_bracket_atom() {
  ++pos_;  // '['
  while (std::isdigit(static_cast<unsigned char>(peek())))
    ++pos_;  // isotope, ignored

  Atom atom;
  const char c = peek();
  if (c == '*') {
    atom = Atom::attachment();
    ++pos_;
  } else if (std::isupper(static_cast<unsigned char>(c))) {
    std::optional<int> z;
    if (std::islower(static_cast<unsigned char>(peek(1)))) {
      z = element_from_symbol(text_.substr(pos_, 2));
      if (z)
        pos_ += 2;
    }
    if (!z) {
      z = element_from_symbol(text_.substr(pos_, 1));
      if (!z)
        fail("unknown element");
      ++pos_;
    }
    atom.element = *z;
  } else if (std::islower(static_cast<unsigned char>(c))) {
    std::optional<int> z;
    for (std::string_view two: { "se", "as" }) {
      if (text_.substr(pos_, 2) == two) {
        std::string sym(two);
        sym[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(sym[0])));
        z = element_from_symbol(sym);
        pos_ += 2;
        break;
      }
    }
    if (!z) {
      const std::string sym(1, static_cast<char>(std::toupper(
                                   static_cast<unsigned char>(c))));
      z = element_from_symbol(sym);
      if (!z || !may_be_aromatic(*z))
        fail("unknown aromatic element");
      ++pos_;
    }
    atom.element = *z;
    atom.aromatic = true;
  } else {
    fail("expected element in bracket atom");
  }

  // Chirality is dropped.
  if (peek() == '@') {
    while (peek() == '@')
      ++pos_;
    while (std::isupper(static_cast<unsigned char>(peek()))
           && peek() != 'H')
      ++pos_;
    while (std::isdigit(static_cast<unsigned char>(peek())))
      ++pos_;
  }

  int hydrogens = 0;
  if (peek() == 'H') {
    ++pos_;
    hydrogens = 1;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      hydrogens = peek() - '0';
      ++pos_;
    }
  }

  int charge = 0;
  if (peek() == '+' || peek() == '-') {
    const char sign = peek();
    const int unit = sign == '+' ? 1 : -1;
    ++pos_;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      charge = unit * (peek() - '0');
      ++pos_;
    } else {
      charge = unit;
      while (peek() == sign) {
        charge += unit;
        ++pos_;
      }
    }
  }
  if (charge < -4 || charge > 4)
    fail("formal charge out of range");

  if (peek() == ':') {
    ++pos_;
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      fail("expected atom class digits");
    while (std::isdigit(static_cast<unsigned char>(peek())))
      ++pos_;
  }
  if (peek() != ']')
    fail("unterminated bracket atom");
  ++pos_;

  if (atom.is_attachment()) {
    if (hydrogens != 0 || charge != 0)
      fail("wildcard atoms cannot carry hydrogens or charge");
  } else {
    atom.hydrogens = hydrogens;
    atom.formal_charge = charge;
  }
  add_atom(atom, false);
}

void SmilesParser::parse_ring_bond() {
  int number = 0;
  if (peek() == '%') {
    ++pos_;
    if (!std::isdigit(static_cast<unsigned char>(peek()))
        || !std::isdigit(static_cast<unsigned char>(peek(1))))
      fail("'%' must be followed by two digits");
    number = (peek() - '0') * 10 + (peek(1) - '0');
    pos_ += 2;
  } else {
    number = peek() - '0';
    ++pos_;
  }
  if (prev_ < 0)
    fail("ring bond without a preceding atom");

  auto it = rings_.find(number);
  if (it == rings_.end()) {
    rings_.emplace(number, RingOpening { prev_, pending_, pos_ });
  } else {
    const RingOpening open = it->second;
    rings_.erase(it);
    std::optional<BondOrder> order = pending_;
    if (open.order) {
      if (order && *order != *open.order)
        fail("conflicting ring-closure bond orders");
      order = open.order;
    }
    connect(open.atom, prev_, order);
  }
  pending_.reset();
  have_pending_ = false;
}

Molecule SmilesParser::parse() {
  if (text_.empty())
    throw SyntaxError("empty SMILES");

  while (!at_end()) {
    const char c = peek();
    switch (c) {
    case '*':
    case 'B':
    case 'C':
    case 'N':
    case 'O':
    case 'P':
    case 'S':
    case 'F':
    case 'I':
    case 'b':
    case 'c':
    case 'n':
    case 'o':
    case 'p':
    case 's':
      parse_organic_atom();
      break;
    case '[':
      parse_bracket_atom();
      break;
    case '-':
    case '=':
    case '#':
    case ':':
    case '/':
    case '\\':
      if (have_pending_)
        fail("consecutive bond symbols");
      have_pending_ = true;
      pending_ = c == '=' ? BondOrder::kDouble
               : c == '#' ? BondOrder::kTriple
               : c == ':' ? BondOrder::kAromatic
                          : BondOrder::kSingle;
      ++pos_;
      break;
    case '(':
      if (prev_ < 0)
        fail("branch without a preceding atom");
      if (have_pending_)
        fail("bond symbol before branch");
      branches_.push_back(prev_);
      ++pos_;
      if (peek() == ')')
        fail("empty branch");
      break;
    case ')':
      if (branches_.empty())
        fail("unbalanced ')'");
      if (have_pending_)
        fail("dangling bond symbol");
      prev_ = branches_.back();
      branches_.pop_back();
      ++pos_;
      break;
    case '%':
      parse_ring_bond();
      break;
    case '.':
      throw MultiComponentError("SMILES \"" + std::string(text_)
                                + "\" contains more than one component");
    default:
      if (std::isdigit(static_cast<unsigned char>(c))) {
        parse_ring_bond();
        break;
      }
      fail(std::string("unexpected character '") + c + "'");
    }
  }
  if (!branches_.empty())
    fail("unbalanced '('");
  if (!rings_.empty())
    fail("unclosed ring bond " + std::to_string(rings_.begin()->first));
  if (have_pending_)
    fail("dangling bond symbol");

  // Fold explicit [H] atoms into their heavy neighbour.
  const int n = static_cast<int>(atoms_.size());
  std::vector<int> degree(n, 0);
  std::vector<int> valence(n, 0);
  for (const RawBond &b: bonds_) {
    ++degree[b.a];
    ++degree[b.b];
    valence[b.a] += valence_contribution(b.order);
    valence[b.b] += valence_contribution(b.order);
  }
  std::vector<char> fold(n, 0);
  std::vector<int> extra_h(n, 0);
  for (const RawBond &b: bonds_) {
    for (auto [h, heavy]: { std::pair { b.a, b.b }, std::pair { b.b, b.a } }) {
      const Atom &ha = atoms_[h];
      if (ha.element == 1 && ha.formal_charge == 0 && ha.hydrogens == 0
          && degree[h] == 1 && atoms_[heavy].element != 1
          && !atoms_[heavy].is_attachment() && b.order == BondOrder::kSingle) {
        fold[h] = 1;
        ++extra_h[heavy];
      }
    }
  }

  MoleculeBuilder builder;
  builder.set_demote_acyclic_aromatic_bonds(true);
  std::vector<int> index(n, -1);
  for (int i = 0; i < n; ++i) {
    if (fold[i])
      continue;
    Atom atom = atoms_[i];
    bool implicit = implicit_[i];
    if (atom.is_attachment() && degree[i] != 1)
      throw SyntaxError("wildcard atom must have exactly one bond in \""
                        + std::string(text_) + "\"");
    if (extra_h[i] > 0) {
      if (implicit) {
        atom.hydrogens =
          implicit_hydrogens(atom.element, atom.aromatic, valence[i]);
        implicit = false;
      }
      atom.hydrogens += extra_h[i];
    }
    index[i] = builder.add_atom(atom, implicit);
  }
  for (const RawBond &b: bonds_) {
    if (fold[b.a] || fold[b.b])
      continue;
    const int id = builder.add_bond(index[b.a], index[b.b], b.order);
    if (b.implicit_aromatic)
      builder.mark_implicit_aromatic(id);
  }
  try {
    return std::move(builder).build();
  } catch (const GraphError &e) {
    throw SyntaxError(std::string(e.what()) + " in \"" + std::string(text_)
                      + "\"");
  }
}

// Writer.

std::string atom_text(const Molecule &m, int i) {
  const Atom &a = m.atom(i);
  if (a.is_attachment())
    return "*";
  std::string sym(a.symbol());
  if (a.aromatic && may_be_aromatic(a.element))
    sym[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(sym[0])));

  if (is_organic_subset(a.element) && a.formal_charge == 0) {
    try {
      if (implicit_hydrogens(a.element, a.aromatic, bond_valence(m, i))
          == a.hydrogens)
        return sym;
    } catch (const ValenceError &) {
    }
  }
  std::string out = "[" + sym;
  if (a.hydrogens > 0) {
    out += 'H';
    if (a.hydrogens > 1)
      out += std::to_string(a.hydrogens);
  }
  if (a.formal_charge != 0) {
    out += a.formal_charge > 0 ? '+' : '-';
    const int mag = a.formal_charge > 0 ? a.formal_charge : -a.formal_charge;
    if (mag > 1)
      out += std::to_string(mag);
  }
  out += ']';
  return out;
}

std::string bond_text(const Molecule &m, int bond) {
  const Bond &b = m.bond(bond);
  const bool both_aromatic = m.atom(b.begin).aromatic && m.atom(b.end).aromatic;
  switch (b.order) {
  case BondOrder::kSingle:
    return both_aromatic ? "-" : "";
  case BondOrder::kAromatic:
    return both_aromatic && m.bond_in_ring(bond) ? "" : ":";
  case BondOrder::kDouble:
    return "=";
  case BondOrder::kTriple:
    return "#";
  }
  return "";
}

class SmilesWriter {
 public:
  explicit SmilesWriter(const Molecule &m)
    : m_(m), order_(m.num_atoms(), -1), tree_bond_(m.num_bonds(), 0),
      ring_label_(m.num_bonds(), 0) { }

  std::string write() {
    std::string out;
    for (int root = 0; root < m_.num_atoms(); ++root) {
      if (order_[root] >= 0)
        continue;
      mark_tree(root);
      if (!out.empty())
        out += '.';
      emit(root, -1, out);
    }
    return out;
  }

 private:
  void mark_tree(int root) {
    struct Frame {
      int atom;
      std::size_t next;
    };
    std::vector<Frame> stack { { root, 0 } };
    order_[root] = counter_++;
    while (!stack.empty()) {
      Frame &f = stack.back();
      const auto nbrs = m_.neighbors(f.atom);
      if (f.next >= nbrs.size()) {
        stack.pop_back();
        continue;
      }
      const Neighbor nb = nbrs[f.next++];
      if (order_[nb.atom] < 0) {
        order_[nb.atom] = counter_++;
        tree_bond_[nb.bond] = 1;
        stack.push_back({ nb.atom, 0 });
      }
    }
  }

  int take_label() {
    for (int label = 1;; ++label) {
      if (!used_labels_.contains(label)) {
        used_labels_.insert({ label, 1 });
        return label;
      }
    }
  }

  static std::string label_text(int label) {
    if (label < 10)
      return std::to_string(label);
    return "%" + std::to_string(label);
  }

  void emit(int atom, int via_bond, std::string &out) {
    out += atom_text(m_, atom);
    // Ring closures: close the ones opened earlier, then open new ones.
    for (const Neighbor &nb: m_.neighbors(atom)) {
      if (tree_bond_[nb.bond] || nb.bond == via_bond)
        continue;
      if (order_[nb.atom] < order_[atom] && ring_label_[nb.bond] > 0) {
        out += bond_text(m_, nb.bond);
        out += label_text(ring_label_[nb.bond]);
        used_labels_.erase(ring_label_[nb.bond]);
        ring_label_[nb.bond] = -1;
      }
    }
    for (const Neighbor &nb: m_.neighbors(atom)) {
      if (tree_bond_[nb.bond] || nb.bond == via_bond)
        continue;
      if (order_[nb.atom] > order_[atom] && ring_label_[nb.bond] == 0) {
        ring_label_[nb.bond] = take_label();
        out += label_text(ring_label_[nb.bond]);
      }
    }
    std::vector<Neighbor> children;
    for (const Neighbor &nb: m_.neighbors(atom)) {
      if (tree_bond_[nb.bond] && nb.bond != via_bond
          && order_[nb.atom] > order_[atom])
        children.push_back(nb);
    }
    for (std::size_t k = 0; k < children.size(); ++k) {
      const bool branch = k + 1 < children.size();
      if (branch)
        out += '(';
      out += bond_text(m_, children[k].bond);
      emit(children[k].atom, children[k].bond, out);
      if (branch)
        out += ')';
    }
  }

  const Molecule &m_;
  std::vector<int> order_;
  std::vector<std::uint8_t> tree_bond_;
  std::vector<int> ring_label_;
  std::map<int, int> used_labels_;
  int counter_ = 0;
};

}  // namespace

Molecule parse_smiles(std::string_view text) {
  return SmilesParser(text).parse();
}

std::string write_smiles(const Molecule &m) {
  return SmilesWriter(m).write();
}

}  // namespace fragretro
