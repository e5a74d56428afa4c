// Copyright 2026 The hatelab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hatelab/encoding/pattern.hpp"

#include <algorithm>

#include "hatelab/text/utf8.hpp"
#include "hatelab/util/error.hpp"

namespace hatelab::encoding {

namespace {

constexpr std::size_t npos = std::u32string_view::npos;

[[noreturn]] void fail(std::string_view source, const std::string& what) {
  throw Error(ErrorCode::RuleTableInvalid, "pattern '" + std::string(source) + "': " + what);
}

int hex_digit(char32_t c) {
  if (c >= '0' && c <= '9') return static_cast<int>(c - '0');
  if (c >= 'a' && c <= 'f') return static_cast<int>(c - 'a' + 10);
  if (c >= 'A' && c <= 'F') return static_cast<int>(c - 'A' + 10);
  return -1;
}

// Reads an escape starting after the backslash at cps[i]; advances i past it.
char32_t read_escape(std::u32string_view cps, std::size_t& i, std::string_view source) {
  if (i >= cps.size()) fail(source, "dangling backslash");
  const char32_t c = cps[i++];
  switch (c) {
    case 'u': {
      if (i + 4 > cps.size()) fail(source, "short \\u escape");
      char32_t v = 0;
      for (int k = 0; k < 4; ++k) {
        const int d = hex_digit(cps[i++]);
        if (d < 0) fail(source, "bad hex digit in \\u escape");
        v = v * 16 + static_cast<char32_t>(d);
      }
      return v;
    }
    case 't': return U'\t';
    case 'n': return U'\n';
    case '\\': case '[': case ']': case '(': case ')': case '|': case '?':
    case '*': case '+': case '^': case '$': case '.': case '-': case '{': case '}':
      return c;
    default:
      fail(source, "unknown escape");
  }
}

// AST used only during compilation.
struct Node {
  enum Kind { Lit, Any, Cls, Group, Alt, Cat, Quest, Star, Plus, Bol, Eol };

  explicit Node(Kind k) : kind(k) {}

  Kind kind;
  char32_t ch = 0;
  int cls = -1;
  int group = -1;
  std::vector<Node> kids;
};

}  // namespace

class PatternCompiler {
 public:
  PatternCompiler(std::string_view source, Pattern& out)
      : source_(source), cps_(text::decode_utf8(source)), out_(out) {}

  void run() {
    Node root = parse_alt();
    if (pos_ != cps_.size()) fail(source_, "unbalanced ')'");
    if (nullable(root)) fail(source_, "pattern can match the empty string");
    emit({Pattern::Op::Save, 0, 0});
    compile(root);
    emit({Pattern::Op::Save, 0, 1});
    emit({Pattern::Op::Match});
    out_.groups_ = static_cast<std::size_t>(groups_);
  }

 private:
  std::string_view source_;
  std::u32string cps_;
  Pattern& out_;
  std::size_t pos_ = 0;
  int groups_ = 0;

  bool at_end() const { return pos_ >= cps_.size(); }
  char32_t peek() const { return cps_[pos_]; }

  Node parse_alt() {
    Node first = parse_cat();
    if (at_end() || peek() != U'|') return first;
    Node alt{Node::Alt};
    alt.kids.push_back(std::move(first));
    while (!at_end() && peek() == U'|') {
      ++pos_;
      alt.kids.push_back(parse_cat());
    }
    return alt;
  }

  Node parse_cat() {
    Node cat{Node::Cat};
    while (!at_end() && peek() != U'|' && peek() != U')') {
      Node atom = parse_atom();
      while (!at_end() && (peek() == U'?' || peek() == U'*' || peek() == U'+')) {
        const char32_t q = cps_[pos_++];
        if (atom.kind == Node::Bol || atom.kind == Node::Eol) fail(source_, "quantified anchor");
        if ((q == U'*' || q == U'+') && nullable(atom)) fail(source_, "repeated subpattern can match empty");
        Node wrapped{q == U'?' ? Node::Quest : q == U'*' ? Node::Star : Node::Plus};
        wrapped.kids.push_back(std::move(atom));
        atom = std::move(wrapped);
      }
      cat.kids.push_back(std::move(atom));
    }
    return cat;
  }

  Node parse_atom() {
    const char32_t c = cps_[pos_++];
    switch (c) {
      case U'(': {
        if (++groups_ > static_cast<int>(kMaxGroups)) fail(source_, "more than 9 groups");
        Node g{Node::Group};
        g.group = groups_;
        g.kids.push_back(parse_alt());
        if (at_end() || peek() != U')') fail(source_, "unbalanced '('");
        ++pos_;
        return g;
      }
      case U'[': return parse_class();
      case U'.': return Node{Node::Any};
      case U'^': return Node{Node::Bol};
      case U'$': return Node{Node::Eol};
      case U'?': case U'*': case U'+': fail(source_, "quantifier without operand");
      case U']': fail(source_, "unbalanced ']'");
      case U'\\': {
        Node lit{Node::Lit};
        lit.ch = read_escape(cps_, pos_, source_);
        return lit;
      }
      default: {
        Node lit{Node::Lit};
        lit.ch = c;
        return lit;
      }
    }
  }

  Node parse_class() {
    Pattern::CharClass cls;
    if (!at_end() && peek() == U'^') {
      cls.negated = true;
      ++pos_;
    }
    auto read_char = [&]() -> char32_t {
      if (at_end()) fail(source_, "unterminated class");
      char32_t c = cps_[pos_++];
      if (c == U'\\') c = read_escape(cps_, pos_, source_);
      return c;
    };
    while (true) {
      if (at_end()) fail(source_, "unterminated class");
      if (peek() == U']') {
        ++pos_;
        break;
      }
      const char32_t lo = read_char();
      char32_t hi = lo;
      if (!at_end() && peek() == U'-' && pos_ + 1 < cps_.size() && cps_[pos_ + 1] != U']') {
        ++pos_;
        hi = read_char();
        if (hi < lo) fail(source_, "reversed class range");
      }
      cls.ranges.push_back({lo, hi});
    }
    if (cls.ranges.empty()) fail(source_, "empty class");
    out_.classes_.push_back(std::move(cls));
    Node n{Node::Cls};
    n.cls = static_cast<int>(out_.classes_.size() - 1);
    return n;
  }

  static bool nullable(const Node& n) {
    switch (n.kind) {
      case Node::Lit: case Node::Any: case Node::Cls: return false;
      case Node::Bol: case Node::Eol: case Node::Quest: case Node::Star: return true;
      case Node::Plus: case Node::Group: return nullable(n.kids[0]);
      case Node::Alt:
        return std::any_of(n.kids.begin(), n.kids.end(), [](const Node& k) { return nullable(k); });
      case Node::Cat:
        return std::all_of(n.kids.begin(), n.kids.end(), [](const Node& k) { return nullable(k); });
    }
    return false;
  }

  int emit(Pattern::Inst inst) {
    out_.program_.push_back(inst);
    return static_cast<int>(out_.program_.size() - 1);
  }
  int here() const { return static_cast<int>(out_.program_.size()); }

  void compile(const Node& n) {
    using Op = Pattern::Op;
    switch (n.kind) {
      case Node::Lit: emit({Op::Char, n.ch}); break;
      case Node::Any: emit({Op::Any}); break;
      case Node::Cls: emit({Op::Class, 0, n.cls}); break;
      case Node::Bol: emit({Op::Bol}); break;
      case Node::Eol: emit({Op::Eol}); break;
      case Node::Cat:
        for (const auto& k : n.kids) compile(k);
        break;
      case Node::Group:
        emit({Op::Save, 0, 2 * n.group});
        compile(n.kids[0]);
        emit({Op::Save, 0, 2 * n.group + 1});
        break;
      case Node::Alt: {
        std::vector<int> exits;
        for (std::size_t i = 0; i < n.kids.size(); ++i) {
          if (i + 1 < n.kids.size()) {
            const int split = emit({Op::Split});
            out_.program_[split].x = here();
            compile(n.kids[i]);
            exits.push_back(emit({Op::Jmp}));
            out_.program_[split].y = here();
          } else {
            compile(n.kids[i]);
          }
        }
        for (int e : exits) out_.program_[e].x = here();
        break;
      }
      case Node::Quest: {
        const int split = emit({Op::Split});
        out_.program_[split].x = here();
        compile(n.kids[0]);
        out_.program_[split].y = here();
        break;
      }
      case Node::Star: {
        const int split = emit({Op::Split});
        out_.program_[split].x = here();
        compile(n.kids[0]);
        emit({Op::Jmp, 0, split});
        out_.program_[split].y = here();
        break;
      }
      case Node::Plus: {
        const int start = here();
        compile(n.kids[0]);
        const int split = emit({Op::Split});
        out_.program_[split].x = start;
        out_.program_[split].y = here();
        break;
      }
    }
  }
};

bool Pattern::CharClass::contains(char32_t cp) const noexcept {
  const bool hit = std::any_of(ranges.begin(), ranges.end(),
                               [cp](const Range& r) { return cp >= r.lo && cp <= r.hi; });
  return hit != negated;
}

std::u32string_view Match::group(std::u32string_view text, std::size_t i) const {
  const auto [b, e] = groups[i];
  if (b == npos || e == npos) return {};
  return text.substr(b, e - b);
}

Pattern Pattern::compile(std::string_view source) {
  Pattern p;
  p.source_ = std::string(source);
  PatternCompiler(source, p).run();
  return p;
}

std::optional<Match> Pattern::match_at(std::u32string_view text, std::size_t pos) const {
  constexpr std::size_t kSlots = 2 * (kMaxGroups + 1);
  struct Thread {
    int pc;
    std::size_t sp;
    int slot;            // slot to restore on backtrack, -1 for none
    std::size_t saved;   // value to restore
  };
  std::array<std::size_t, kSlots> slots;
  slots.fill(npos);
  std::vector<Thread> stack;
  stack.push_back({0, pos, -1, 0});
  while (!stack.empty()) {
    Thread t = stack.back();
    stack.pop_back();
    if (t.slot >= 0) {
      slots[static_cast<std::size_t>(t.slot)] = t.saved;
      continue;
    }
    int pc = t.pc;
    std::size_t sp = t.sp;
    while (true) {
      const Inst& in = program_[static_cast<std::size_t>(pc)];
      bool dead = false;
      switch (in.op) {
        case Op::Char:
          if (sp < text.size() && text[sp] == in.ch) ++sp, ++pc;
          else dead = true;
          break;
        case Op::Any:
          if (sp < text.size()) ++sp, ++pc;
          else dead = true;
          break;
        case Op::Class:
          if (sp < text.size() && classes_[static_cast<std::size_t>(in.x)].contains(text[sp])) ++sp, ++pc;
          else dead = true;
          break;
        case Op::Bol:
          if (sp == 0) ++pc;
          else dead = true;
          break;
        case Op::Eol:
          if (sp == text.size()) ++pc;
          else dead = true;
          break;
        case Op::Jmp:
          pc = in.x;
          break;
        case Op::Split:
          stack.push_back({in.y, sp, -1, 0});
          pc = in.x;
          break;
        case Op::Save: {
          const auto slot = static_cast<std::size_t>(in.x);
          stack.push_back({0, 0, in.x, slots[slot]});
          slots[slot] = sp;
          ++pc;
          break;
        }
        case Op::Match: {
          Match m;
          m.begin = slots[0];
          m.end = slots[1];
          for (std::size_t g = 0; g <= kMaxGroups; ++g) m.groups[g] = {slots[2 * g], slots[2 * g + 1]};
          return m;
        }
      }
      if (dead) break;
    }
  }
  return std::nullopt;
}

std::optional<Match> Pattern::search(std::u32string_view text, std::size_t from) const {
  for (std::size_t pos = from; pos <= text.size(); ++pos) {
    if (auto m = match_at(text, pos)) return m;
  }
  return std::nullopt;
}

std::size_t Pattern::count(std::u32string_view text) const {
  std::size_t n = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto m = search(text, pos);
    if (!m) break;
    ++n;
    pos = m->end;  // compiled patterns never match empty
  }
  return n;
}

Template Template::compile(std::string_view source, std::size_t group_count) {
  Template t;
  t.source_ = std::string(source);
  const std::u32string cps = text::decode_utf8(source);
  std::u32string lit;
  for (std::size_t i = 0; i < cps.size();) {
    const char32_t c = cps[i++];
    if (c == U'$') {
      if (i >= cps.size() || cps[i] < U'1' || cps[i] > U'9') {
        throw Error(ErrorCode::RuleTableInvalid, "replacement '" + t.source_ + "': '$' must be followed by 1-9");
      }
      const int g = static_cast<int>(cps[i++] - U'0');
      if (static_cast<std::size_t>(g) > group_count) {
        throw Error(ErrorCode::RuleTableInvalid,
                    "replacement '" + t.source_ + "' references group $" + std::to_string(g) +
                        " but the pattern has " + std::to_string(group_count));
      }
      if (!lit.empty()) t.pieces_.push_back({std::exchange(lit, {}), -1});
      t.pieces_.push_back({{}, g});
    } else if (c == U'\\') {
      lit.push_back(read_escape(cps, i, source));
    } else {
      lit.push_back(c);
    }
  }
  if (!lit.empty()) t.pieces_.push_back({std::move(lit), -1});
  return t;
}

void Template::expand(std::u32string_view text, const Match& m, std::u32string& out) const {
  for (const auto& p : pieces_) {
    if (p.group < 0) out += p.literal;
    else out += m.group(text, static_cast<std::size_t>(p.group));
  }
}

std::u32string unescape(std::string_view source) {
  const std::u32string cps = text::decode_utf8(source);
  std::u32string out;
  for (std::size_t i = 0; i < cps.size();) {
    const char32_t c = cps[i++];
    if (c == U'\\') out.push_back(read_escape(cps, i, source));
    else out.push_back(c);
  }
  return out;
}

}  // namespace hatelab::encoding
