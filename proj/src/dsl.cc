// Copyright 2026 The FuCE Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fuce/dsl.h"

#include <cctype>
#include <charconv>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <utility>

namespace fuce {

bool IsComparison(Op op) {
  switch (op) {
    case Op::kEq:
    case Op::kNe:
    case Op::kLt:
    case Op::kLe:
    case Op::kGt:
    case Op::kGe:
      return true;
    default:
      return false;
  }
}

bool IsLogical(Op op) {
  return op == Op::kLogicalAnd || op == Op::kLogicalOr ||
         op == Op::kLogicalNot;
}

std::string_view OpSymbol(Op op) {
  switch (op) {
    case Op::kAdd: return "+";
    case Op::kSub: return "-";
    case Op::kMul: return "*";
    case Op::kDiv: return "/";
    case Op::kMod: return "%";
    case Op::kAnd: return "&";
    case Op::kOr: return "|";
    case Op::kXor: return "^";
    case Op::kShl: return "<<";
    case Op::kShr: return ">>";
    case Op::kEq: return "==";
    case Op::kNe: return "!=";
    case Op::kLt: return "<";
    case Op::kLe: return "<=";
    case Op::kGt: return ">";
    case Op::kGe: return ">=";
    case Op::kLogicalAnd: return "and";
    case Op::kLogicalOr: return "or";
    case Op::kLogicalNot: return "not";
    case Op::kNeg: return "-";
    case Op::kBitNot: return "~";
  }
  return "?";
}

std::unique_ptr<Expr> Expr::Clone() const {
  auto e = std::make_unique<Expr>();
  e->kind = kind;
  e->op = op;
  e->value = value;
  e->index = index;
  e->is_boolean = is_boolean;
  if (lhs) e->lhs = lhs->Clone();
  if (rhs) e->rhs = rhs->Clone();
  return e;
}

namespace {

std::vector<Stmt> CloneBody(const std::vector<Stmt>& body) {
  std::vector<Stmt> out;
  out.reserve(body.size());
  for (const Stmt& s : body) {
    Stmt c;
    c.kind = s.kind;
    c.var = s.var;
    c.branch = s.branch;
    if (s.expr) c.expr = s.expr->Clone();
    c.then_body = CloneBody(s.then_body);
    c.else_body = CloneBody(s.else_body);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

Design CloneDesign(const Design& design) {
  Design d;
  d.name = design.name;
  d.params = design.params;
  d.body = CloneBody(design.body);
  d.branch_count = design.branch_count;
  d.input_arity = design.input_arity;
  d.variables = design.variables;
  return d;
}

SyntaxError::SyntaxError(int line, int column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column) {}

namespace {

enum class Tok {
  kIdent,
  kNumber,
  kPunct,
  kEnd,
};

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  Word number = 0;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> Run() {
    std::vector<Token> out;
    while (true) {
      SkipSpaceAndComments();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= src_.size()) {
        t.kind = Tok::kEnd;
        out.push_back(t);
        return out;
      }
      char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                src_[pos_] == '_')) {
          Advance();
        }
        t.kind = Tok::kIdent;
        t.text = std::string(src_.substr(start, pos_ - start));
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        LexNumber(t);
      } else {
        static constexpr std::string_view kTwo[] = {
            "==", "!=", "<=", ">=", "<<", ">>", "&&", "||"};
        t.kind = Tok::kPunct;
        bool matched = false;
        for (std::string_view two : kTwo) {
          if (src_.substr(pos_, 2) == two) {
            t.text = std::string(two);
            Advance();
            Advance();
            matched = true;
            break;
          }
        }
        if (!matched) {
          static constexpr std::string_view kOne = "{}()[];=+-*/%&|^<>!~?:,";
          if (kOne.find(c) == std::string_view::npos) {
            throw SyntaxError(line_, col_,
                              std::string("unexpected character '") + c + "'");
          }
          t.text = std::string(1, c);
          Advance();
        }
      }
      out.push_back(std::move(t));
    }
  }

 private:
  void Advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void SkipSpaceAndComments() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        Advance();
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') Advance();
      } else {
        return;
      }
    }
  }

  void LexNumber(Token& t) {
    size_t start = pos_;
    int base = 10;
    if (src_[pos_] == '0' && pos_ + 1 < src_.size() &&
        (src_[pos_ + 1] == 'x' || src_[pos_ + 1] == 'X')) {
      base = 16;
      Advance();
      Advance();
      start = pos_;
    }
    while (pos_ < src_.size() &&
           std::isalnum(static_cast<unsigned char>(src_[pos_]))) {
      Advance();
    }
    std::string_view digits = src_.substr(start, pos_ - start);
    uint64_t v = 0;
    auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), v, base);
    if (digits.empty() || ec != std::errc() ||
        ptr != digits.data() + digits.size()) {
      throw SyntaxError(t.line, t.column, "malformed integer literal");
    }
    if (v > std::numeric_limits<Word>::max()) {
      throw SyntaxError(t.line, t.column, "integer literal exceeds 32 bits");
    }
    t.kind = Tok::kNumber;
    t.number = static_cast<Word>(v);
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

const std::set<std::string, std::less<>>& Keywords() {
  static const std::set<std::string, std::less<>> k = {
      "design", "inputs", "if",  "else", "while", "output", "halt",
      "in",     "next_input", "and", "or", "not", "true", "false"};
  return k;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Design Run() {
    ExpectIdent("design");
    design_.name = ExpectName();
    Expect("{");
    ExpectIdent("inputs");
    if (Peek().kind != Tok::kNumber) Fail("expected input count");
    design_.input_arity = Next().number;
    Expect(";");
    while (!IsPunct("}")) {
      if (Peek().kind == Tok::kEnd) Fail("unexpected end of input");
      ParseStmt(design_.body);
    }
    Expect("}");
    if (Peek().kind != Tok::kEnd) Fail("trailing tokens after design");
    BranchId next = 0;
    Number(design_.body, next);
    design_.branch_count = next;
    return std::move(design_);
  }

 private:
  static void Number(std::vector<Stmt>& body, BranchId& next) {
    for (Stmt& s : body) {
      if (s.kind == StmtKind::kIf || s.kind == StmtKind::kWhile) {
        s.branch = next++;
        Number(s.then_body, next);
        Number(s.else_body, next);
      }
    }
  }

  const Token& Peek(size_t ahead = 0) const {
    size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  const Token& Next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool IsPunct(std::string_view p, size_t ahead = 0) const {
    return Peek(ahead).kind == Tok::kPunct && Peek(ahead).text == p;
  }
  bool IsIdent(std::string_view w) const {
    return Peek().kind == Tok::kIdent && Peek().text == w;
  }
  [[noreturn]] void Fail(const std::string& msg) const {
    throw SyntaxError(Peek().line, Peek().column, msg);
  }
  void Expect(std::string_view p) {
    if (!IsPunct(p)) Fail("expected '" + std::string(p) + "'");
    Next();
  }
  void ExpectIdent(std::string_view w) {
    if (!IsIdent(w)) Fail("expected '" + std::string(w) + "'");
    Next();
  }
  std::string ExpectName() {
    if (Peek().kind != Tok::kIdent || Keywords().contains(Peek().text)) {
      Fail("expected identifier");
    }
    return Next().text;
  }

  uint32_t DeclareVar(const std::string& name) {
    auto it = slots_.find(name);
    if (it != slots_.end()) return it->second;
    uint32_t slot = static_cast<uint32_t>(design_.variables.size());
    design_.variables.push_back(name);
    slots_.emplace(name, slot);
    return slot;
  }

  void NoteLiteral(Word v) {
    if (seen_literals_.insert(v).second) design_.params.literals.push_back(v);
  }

  void FlushPending(std::vector<Stmt>& body) {
    for (Stmt& s : pending_) body.push_back(std::move(s));
    pending_.clear();
  }

  void ParseBlock(std::vector<Stmt>& body) {
    Expect("{");
    while (!IsPunct("}")) {
      if (Peek().kind == Tok::kEnd) Fail("unexpected end of input");
      ParseStmt(body);
    }
    Expect("}");
  }

  std::unique_ptr<Expr> ParseCondition() {
    int line = Peek().line;
    Expect("(");
    auto cond = ParseExpr();
    Expect(")");
    if (!cond->is_boolean) {
      throw SemanticError("line " + std::to_string(line) +
                          ": condition is not boolean");
    }
    return cond;
  }

  void ParseStmt(std::vector<Stmt>& body) {
    const Token& t = Peek();
    if (t.kind != Tok::kIdent) Fail("expected statement");
    if (t.text == "if") {
      Next();
      Stmt s;
      s.kind = StmtKind::kIf;
      s.expr = ParseCondition();
      FlushPending(body);
      ParseBlock(s.then_body);
      if (IsIdent("else")) {
        Next();
        if (IsIdent("if")) {
          ParseStmt(s.else_body);
        } else {
          ParseBlock(s.else_body);
        }
      }
      body.push_back(std::move(s));
    } else if (t.text == "while") {
      int line = t.line;
      Next();
      Stmt s;
      s.kind = StmtKind::kWhile;
      s.expr = ParseCondition();
      if (!pending_.empty()) {
        throw SemanticError("line " + std::to_string(line) +
                            ": conditional expression in while condition");
      }
      ParseBlock(s.then_body);
      body.push_back(std::move(s));
    } else if (t.text == "output") {
      Next();
      Expect("(");
      Stmt s;
      s.kind = StmtKind::kOutput;
      s.expr = ParseExpr();
      Expect(")");
      Expect(";");
      FlushPending(body);
      body.push_back(std::move(s));
    } else if (t.text == "halt") {
      Next();
      Expect(";");
      Stmt s;
      s.kind = StmtKind::kHalt;
      body.push_back(std::move(s));
    } else {
      std::string name = ExpectName();
      Expect("=");
      Stmt s;
      s.kind = StmtKind::kAssign;
      s.expr = ParseExpr();
      Expect(";");
      s.var = DeclareVar(name);
      FlushPending(body);
      body.push_back(std::move(s));
    }
  }

  std::unique_ptr<Expr> ParseExpr() { return ParseTernary(); }

  std::unique_ptr<Expr> ParseTernary() {
    int line = Peek().line;
    auto cond = ParseBinary(0);
    if (!IsPunct("?")) return cond;
    Next();
    if (!cond->is_boolean) {
      throw SemanticError("line " + std::to_string(line) +
                          ": conditional expression needs a boolean test");
    }
    std::vector<Stmt> outer = std::move(pending_);
    pending_.clear();
    auto then_value = ParseTernary();
    std::vector<Stmt> then_pending = std::move(pending_);
    pending_.clear();
    Expect(":");
    auto else_value = ParseTernary();
    std::vector<Stmt> else_pending = std::move(pending_);
    pending_.clear();

    uint32_t temp = DeclareVar("__t" + std::to_string(temp_counter_++));
    Stmt branch;
    branch.kind = StmtKind::kIf;
    branch.expr = std::move(cond);
    branch.then_body = std::move(then_pending);
    branch.else_body = std::move(else_pending);
    Stmt then_assign;
    then_assign.kind = StmtKind::kAssign;
    then_assign.var = temp;
    then_assign.expr = std::move(then_value);
    branch.then_body.push_back(std::move(then_assign));
    Stmt else_assign;
    else_assign.kind = StmtKind::kAssign;
    else_assign.var = temp;
    else_assign.expr = std::move(else_value);
    branch.else_body.push_back(std::move(else_assign));

    pending_ = std::move(outer);
    pending_.push_back(std::move(branch));
    auto ref = std::make_unique<Expr>();
    ref->kind = ExprKind::kVar;
    ref->index = temp;
    return ref;
  }

  struct BinInfo {
    Op op;
    int prec;
  };

  bool PeekBinary(BinInfo& info) const {
    const Token& t = Peek();
    if (t.kind == Tok::kIdent) {
      if (t.text == "or") { info = {Op::kLogicalOr, 1}; return true; }
      if (t.text == "and") { info = {Op::kLogicalAnd, 2}; return true; }
      return false;
    }
    if (t.kind != Tok::kPunct) return false;
    static const std::map<std::string, BinInfo, std::less<>> kOps = {
        {"||", {Op::kLogicalOr, 1}}, {"&&", {Op::kLogicalAnd, 2}},
        {"|", {Op::kOr, 3}},         {"^", {Op::kXor, 4}},
        {"&", {Op::kAnd, 5}},        {"==", {Op::kEq, 6}},
        {"!=", {Op::kNe, 6}},        {"<", {Op::kLt, 7}},
        {"<=", {Op::kLe, 7}},        {">", {Op::kGt, 7}},
        {">=", {Op::kGe, 7}},        {"<<", {Op::kShl, 8}},
        {">>", {Op::kShr, 8}},       {"+", {Op::kAdd, 9}},
        {"-", {Op::kSub, 9}},        {"*", {Op::kMul, 10}},
        {"/", {Op::kDiv, 10}},       {"%", {Op::kMod, 10}},
    };
    auto it = kOps.find(t.text);
    if (it == kOps.end()) return false;
    info = it->second;
    return true;
  }

  std::unique_ptr<Expr> ParseBinary(int min_prec) {
    auto lhs = ParseUnary();
    BinInfo info;
    while (PeekBinary(info) && info.prec > min_prec) {
      int line = Peek().line;
      Next();
      auto rhs = ParseBinary(info.prec);
      if (IsLogical(info.op) && (!lhs->is_boolean || !rhs->is_boolean)) {
        throw SemanticError("line " + std::to_string(line) +
                            ": logical operator on non-boolean operand");
      }
      auto e = std::make_unique<Expr>();
      e->kind = ExprKind::kBinary;
      e->op = info.op;
      e->is_boolean = IsComparison(info.op) || IsLogical(info.op);
      e->lhs = std::move(lhs);
      e->rhs = std::move(rhs);
      lhs = std::move(e);
    }
    return lhs;
  }

  std::unique_ptr<Expr> ParseUnary() {
    Op op;
    bool unary = true;
    if (IsPunct("-")) {
      op = Op::kNeg;
    } else if (IsPunct("~")) {
      op = Op::kBitNot;
    } else if (IsPunct("!") || IsIdent("not")) {
      op = Op::kLogicalNot;
    } else {
      unary = false;
    }
    if (!unary) return ParsePrimary();
    int line = Peek().line;
    Next();
    auto operand = ParseUnary();
    if (op == Op::kLogicalNot && !operand->is_boolean) {
      throw SemanticError("line " + std::to_string(line) +
                          ": 'not' applied to non-boolean operand");
    }
    auto e = std::make_unique<Expr>();
    e->kind = ExprKind::kUnary;
    e->op = op;
    e->is_boolean = op == Op::kLogicalNot;
    e->lhs = std::move(operand);
    return e;
  }

  std::unique_ptr<Expr> ParsePrimary() {
    const Token& t = Peek();
    auto e = std::make_unique<Expr>();
    if (t.kind == Tok::kNumber) {
      e->kind = ExprKind::kConst;
      e->value = Next().number;
      NoteLiteral(e->value);
      return e;
    }
    if (IsPunct("(")) {
      Next();
      auto inner = ParseExpr();
      Expect(")");
      return inner;
    }
    if (t.kind != Tok::kIdent) Fail("expected expression");
    if (t.text == "true" || t.text == "false") {
      e->kind = ExprKind::kConst;
      e->value = t.text == "true" ? 1 : 0;
      e->is_boolean = true;
      Next();
      return e;
    }
    if (t.text == "in") {
      int line = t.line;
      Next();
      Expect("[");
      if (Peek().kind != Tok::kNumber) Fail("expected input slot number");
      Word slot = Next().number;
      Expect("]");
      if (slot >= design_.input_arity) {
        throw SemanticError("line " + std::to_string(line) + ": input slot " +
                            std::to_string(slot) + " out of range (inputs " +
                            std::to_string(design_.input_arity) + ")");
      }
      e->kind = ExprKind::kInputSlot;
      e->index = slot;
      return e;
    }
    if (t.text == "next_input") {
      Next();
      Expect("(");
      Expect(")");
      e->kind = ExprKind::kNextInput;
      return e;
    }
    int line = t.line;
    std::string name = ExpectName();
    auto it = slots_.find(name);
    if (it == slots_.end()) {
      throw SemanticError("line " + std::to_string(line) +
                          ": undeclared variable '" + name + "'");
    }
    e->kind = ExprKind::kVar;
    e->index = it->second;
    return e;
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  Design design_;
  std::unordered_map<std::string, uint32_t> slots_;
  std::set<Word> seen_literals_;
  std::vector<Stmt> pending_;
  int temp_counter_ = 0;
};

int Precedence(const Expr& e) {
  if (e.kind == ExprKind::kBinary) {
    switch (e.op) {
      case Op::kLogicalOr: return 1;
      case Op::kLogicalAnd: return 2;
      case Op::kOr: return 3;
      case Op::kXor: return 4;
      case Op::kAnd: return 5;
      case Op::kEq:
      case Op::kNe: return 6;
      case Op::kLt:
      case Op::kLe:
      case Op::kGt:
      case Op::kGe: return 7;
      case Op::kShl:
      case Op::kShr: return 8;
      case Op::kAdd:
      case Op::kSub: return 9;
      default: return 10;
    }
  }
  if (e.kind == ExprKind::kUnary) return 11;
  return 12;
}

void PrintExprTo(const Design& d, const Expr& e, std::ostream& os) {
  switch (e.kind) {
    case ExprKind::kConst:
      if (e.is_boolean) {
        os << (e.value ? "true" : "false");
      } else {
        os << e.value;
      }
      return;
    case ExprKind::kVar:
      os << d.variables.at(e.index);
      return;
    case ExprKind::kInputSlot:
      os << "in[" << e.index << "]";
      return;
    case ExprKind::kNextInput:
      os << "next_input()";
      return;
    case ExprKind::kUnary: {
      os << OpSymbol(e.op);
      if (e.op == Op::kLogicalNot) os << ' ';
      bool paren = Precedence(*e.lhs) < 11;
      if (paren) os << '(';
      PrintExprTo(d, *e.lhs, os);
      if (paren) os << ')';
      return;
    }
    case ExprKind::kBinary: {
      int prec = Precedence(e);
      // Left-associative: the right operand needs parentheses at equal
      // precedence, the left one only at lower precedence.
      bool lparen = Precedence(*e.lhs) < prec;
      bool rparen = Precedence(*e.rhs) <= prec;
      if (lparen) os << '(';
      PrintExprTo(d, *e.lhs, os);
      if (lparen) os << ')';
      os << ' ' << OpSymbol(e.op) << ' ';
      if (rparen) os << '(';
      PrintExprTo(d, *e.rhs, os);
      if (rparen) os << ')';
      return;
    }
  }
}

void PrintBody(const Design& d, const std::vector<Stmt>& body, int indent,
               std::ostream& os) {
  std::string pad(static_cast<size_t>(indent) * 2, ' ');
  for (const Stmt& s : body) {
    switch (s.kind) {
      case StmtKind::kAssign:
        os << pad << d.variables.at(s.var) << " = ";
        PrintExprTo(d, *s.expr, os);
        os << ";\n";
        break;
      case StmtKind::kOutput:
        os << pad << "output(";
        PrintExprTo(d, *s.expr, os);
        os << ");\n";
        break;
      case StmtKind::kHalt:
        os << pad << "halt;\n";
        break;
      case StmtKind::kIf:
        os << pad << "if (";
        PrintExprTo(d, *s.expr, os);
        os << ") {\n";
        PrintBody(d, s.then_body, indent + 1, os);
        if (!s.else_body.empty()) {
          os << pad << "} else {\n";
          PrintBody(d, s.else_body, indent + 1, os);
        }
        os << pad << "}\n";
        break;
      case StmtKind::kWhile:
        os << pad << "while (";
        PrintExprTo(d, *s.expr, os);
        os << ") {\n";
        PrintBody(d, s.then_body, indent + 1, os);
        os << pad << "}\n";
        break;
    }
  }
}

}  // namespace

Design ParseDesign(std::string_view source) {
  Parser parser(Lexer(source).Run());
  return parser.Run();
}

std::string PrintExpr(const Design& design, const Expr& expr) {
  std::ostringstream os;
  PrintExprTo(design, expr, os);
  return os.str();
}

std::string PrintDesign(const Design& design) {
  std::ostringstream os;
  os << "design " << design.name << " {\n";
  os << "  inputs " << design.input_arity << ";\n";
  PrintBody(design, design.body, 1, os);
  os << "}\n";
  return os.str();
}

std::vector<BranchEdge> AllEdges(const Design& design) {
  std::vector<BranchEdge> edges;
  edges.reserve(design.branch_count * 2);
  for (BranchId b = 0; b < design.branch_count; ++b) {
    edges.push_back({b, Polarity::kFalse});
    edges.push_back({b, Polarity::kTrue});
  }
  return edges;
}

std::string EdgeName(const BranchEdge& edge) {
  return "b" + std::to_string(edge.branch) +
         (edge.polarity == Polarity::kTrue ? "T" : "F");
}

}  // namespace fuce
