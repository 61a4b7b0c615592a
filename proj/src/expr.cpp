#include "effham/expr.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstring>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace effham {

namespace {

struct InternKey {
  Expr::Kind kind;
  std::uint64_t value_bits;
  std::string name;
  std::uint64_t a_id, b_id;

  bool operator==(const InternKey& o) const {
    return kind == o.kind && value_bits == o.value_bits && name == o.name &&
           a_id == o.a_id && b_id == o.b_id;
  }
};

struct InternKeyHash {
  std::size_t operator()(const InternKey& k) const {
    std::size_t h = std::hash<int>()(static_cast<int>(k.kind));
    auto mix = [&h](std::size_t v) {
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    mix(std::hash<std::uint64_t>()(k.value_bits));
    mix(std::hash<std::string>()(k.name));
    mix(std::hash<std::uint64_t>()(k.a_id));
    mix(std::hash<std::uint64_t>()(k.b_id));
    return h;
  }
};

struct InternTable {
  std::mutex mu;
  std::unordered_map<InternKey, std::weak_ptr<const Expr::Node>, InternKeyHash>
      map;
  std::atomic<std::uint64_t> next_id{1};
};

InternTable& table() {
  static InternTable t;
  return t;
}

double bits_of(double v, std::uint64_t* out) {
  std::memcpy(out, &v, sizeof v);
  return v;
}

}  // namespace

Expr Expr::intern(Kind k, double value, std::string name, NodeRef a,
                  NodeRef b) {
  InternKey key;
  key.kind = k;
  key.value_bits = 0;
  bits_of(value, &key.value_bits);
  key.name = name;
  key.a_id = a ? a->id : 0;
  key.b_id = b ? b->id : 0;

  InternTable& t = table();
  std::lock_guard<std::mutex> lk(t.mu);
  auto it = t.map.find(key);
  if (it != t.map.end()) {
    if (NodeRef existing = it->second.lock()) return Expr(existing);
  }
  auto node = std::make_shared<Node>();
  node->kind = k;
  node->value = value;
  node->name = std::move(name);
  node->a = std::move(a);
  node->b = std::move(b);
  node->id = t.next_id.fetch_add(1, std::memory_order_relaxed);
  t.map[key] = node;
  return Expr(node);
}

Expr Expr::constant(double v) {
  return intern(Kind::Constant, v, {}, nullptr, nullptr);
}

Expr Expr::parameter(std::string name) {
  return intern(Kind::Parameter, 0.0, std::move(name), nullptr, nullptr);
}

// Construction keeps the graph compact with exact 0/1 identities only;
// everything else (including constant folding) is left to simplify().
Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_constant(0.0)) return b;
  if (b.is_constant(0.0)) return a;
  return Expr::intern(Expr::Kind::Add, 0.0, {}, a.ref(), b.ref());
}

Expr operator-(const Expr& a, const Expr& b) {
  if (b.is_constant(0.0)) return a;
  return Expr::intern(Expr::Kind::Sub, 0.0, {}, a.ref(), b.ref());
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_constant(0.0) || b.is_constant(0.0)) return Expr::constant(0.0);
  if (a.is_constant(1.0)) return b;
  if (b.is_constant(1.0)) return a;
  return Expr::intern(Expr::Kind::Mul, 0.0, {}, a.ref(), b.ref());
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_constant(1.0)) return a;
  return Expr::intern(Expr::Kind::Div, 0.0, {}, a.ref(), b.ref());
}

Expr Expr::operator-() const {
  if (is_constant(0.0)) return *this;
  if (n_->kind == Kind::Neg) return Expr(n_->a);
  return intern(Kind::Neg, 0.0, {}, n_, nullptr);
}

Expr Expr::sqrt(const Expr& x) {
  if (x.is_constant(0.0) || x.is_constant(1.0)) return x;
  return intern(Kind::Sqrt, 0.0, {}, x.ref(), nullptr);
}

Expr Expr::abs(const Expr& x) {
  return intern(Kind::Abs, 0.0, {}, x.ref(), nullptr);
}

const char* Expr::kind_name(Kind k) {
  switch (k) {
    case Kind::Constant: return "const";
    case Kind::Parameter: return "param";
    case Kind::Add: return "add";
    case Kind::Sub: return "sub";
    case Kind::Mul: return "mul";
    case Kind::Div: return "div";
    case Kind::Neg: return "neg";
    case Kind::Sqrt: return "sqrt";
    case Kind::Abs: return "abs";
  }
  return "?";
}

namespace {

struct EvalCtx {
  const ParamEnv* env;
  std::unordered_map<const Expr::Node*, double> memo;
  std::vector<const Expr::Node*> path;

  [[noreturn]] void fail(const Expr::Node* n, const std::string& what) {
    std::string p;
    for (const Expr::Node* a : path) {
      p += Expr::kind_name(a->kind);
      p += '/';
    }
    p += Expr::kind_name(n->kind);
    throw ExprError(what + " at node #" + std::to_string(n->id) + " (path " +
                    p + ")");
  }

  double run(const Expr::Node* n) {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    path.push_back(n);
    double r = 0.0;
    switch (n->kind) {
      case Expr::Kind::Constant:
        r = n->value;
        break;
      case Expr::Kind::Parameter: {
        auto p = env->find(n->name);
        if (p == env->end()) fail(n, "unbound parameter '" + n->name + "'");
        r = p->second;
        break;
      }
      case Expr::Kind::Add: r = run(n->a.get()) + run(n->b.get()); break;
      case Expr::Kind::Sub: r = run(n->a.get()) - run(n->b.get()); break;
      case Expr::Kind::Mul: r = run(n->a.get()) * run(n->b.get()); break;
      case Expr::Kind::Div: {
        double num = run(n->a.get());
        double den = run(n->b.get());
        if (den == 0.0) fail(n, "division by zero");
        r = num / den;
        break;
      }
      case Expr::Kind::Neg: r = -run(n->a.get()); break;
      case Expr::Kind::Sqrt: {
        double x = run(n->a.get());
        if (x < 0.0)
          fail(n, "sqrt of negative value " + std::to_string(x));
        r = std::sqrt(x);
        break;
      }
      case Expr::Kind::Abs: r = std::abs(run(n->a.get())); break;
    }
    path.pop_back();
    memo.emplace(n, r);
    return r;
  }
};

}  // namespace

double eval(const Expr& e, const ParamEnv& env) {
  if (!e.valid()) throw ExprError("eval of empty expression handle");
  EvalCtx ctx;
  ctx.env = &env;
  return ctx.run(e.node());
}

namespace {

bool const_of(const Expr& e, double* out) {
  if (e.node()->kind == Expr::Kind::Constant) {
    *out = e.node()->value;
    return true;
  }
  return false;
}

Expr simplify_node(const Expr::Node* n,
                   std::unordered_map<const Expr::Node*, Expr>& memo) {
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;

  Expr out;
  switch (n->kind) {
    case Expr::Kind::Constant:
      out = Expr::constant(n->value);
      break;
    case Expr::Kind::Parameter:
      out = Expr::parameter(n->name);
      break;
    case Expr::Kind::Neg: {
      Expr a = simplify_node(n->a.get(), memo);
      double ca;
      if (const_of(a, &ca))
        out = Expr::constant(-ca);
      else
        out = -a;
      break;
    }
    case Expr::Kind::Sqrt: {
      Expr a = simplify_node(n->a.get(), memo);
      double ca;
      if (const_of(a, &ca) && ca >= 0.0)
        out = Expr::constant(std::sqrt(ca));
      else
        out = Expr::sqrt(a);
      break;
    }
    case Expr::Kind::Abs: {
      Expr a = simplify_node(n->a.get(), memo);
      double ca;
      if (const_of(a, &ca))
        out = Expr::constant(std::abs(ca));
      else
        out = Expr::abs(a);
      break;
    }
    default: {
      Expr a = simplify_node(n->a.get(), memo);
      Expr b = simplify_node(n->b.get(), memo);
      double ca, cb;
      bool fa = const_of(a, &ca), fb = const_of(b, &cb);
      switch (n->kind) {
        case Expr::Kind::Add:
          if (fa && fb) out = Expr::constant(ca + cb);
          else out = a + b;  // 0-identities applied at construction
          break;
        case Expr::Kind::Sub:
          if (fa && fb) out = Expr::constant(ca - cb);
          else out = a - b;
          break;
        case Expr::Kind::Mul:
          if (fa && fb) out = Expr::constant(ca * cb);
          else out = a * b;
          break;
        case Expr::Kind::Div:
          if (fa && fb && cb != 0.0) out = Expr::constant(ca / cb);
          else out = a / b;
          break;
        default:
          out = a;  // unreachable
      }
    }
  }
  memo.emplace(n, out);
  return out;
}

}  // namespace

Expr simplify(const Expr& e) {
  std::unordered_map<const Expr::Node*, Expr> memo;
  return simplify_node(e.node(), memo);
}

namespace {

void collect(const Expr::Node* n,
             std::unordered_map<const Expr::Node*, bool>& seen,
             std::vector<const Expr::Node*>& order) {
  if (seen.count(n)) return;
  seen[n] = true;
  if (n->a) collect(n->a.get(), seen, order);
  if (n->b) collect(n->b.get(), seen, order);
  order.push_back(n);
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

int precedence(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return 2;
    case Expr::Kind::Neg: return 3;
    default: return 4;
  }
}

void emit_node(const Expr::Node* n, std::string& out) {
  switch (n->kind) {
    case Expr::Kind::Constant: {
      if (n->value < 0.0) {
        out += '(';
        out += format_double(n->value);
        out += ')';
      } else {
        out += format_double(n->value);
      }
      return;
    }
    case Expr::Kind::Parameter: out += n->name; return;
    case Expr::Kind::Sqrt:
    case Expr::Kind::Abs:
      out += (n->kind == Expr::Kind::Sqrt) ? "sqrt(" : "abs(";
      emit_node(n->a.get(), out);
      out += ')';
      return;
    case Expr::Kind::Neg: {
      out += "(-";
      emit_node(n->a.get(), out);
      out += ')';
      return;
    }
    default: {
      char op = '+';
      if (n->kind == Expr::Kind::Sub) op = '-';
      if (n->kind == Expr::Kind::Mul) op = '*';
      if (n->kind == Expr::Kind::Div) op = '/';
      const int p = precedence(n->kind);
      auto sub = [&](const Expr::Node* c, bool right) {
        bool paren = precedence(c->kind) < p ||
                     (right && precedence(c->kind) == p);
        if (paren) out += '(';
        emit_node(c, out);
        if (paren) out += ')';
      };
      sub(n->a.get(), false);
      out += ' ';
      out += op;
      out += ' ';
      sub(n->b.get(), true);
    }
  }
}

}  // namespace

std::size_t node_count(const Expr& e) {
  std::unordered_map<const Expr::Node*, bool> seen;
  std::vector<const Expr::Node*> order;
  collect(e.node(), seen, order);
  return order.size();
}

std::string emit_infix(const Expr& e) {
  std::string out;
  emit_node(e.node(), out);
  return out;
}

std::string emit_graph_json(const Expr& e,
                            const std::map<std::uint64_t, int>* layers) {
  std::unordered_map<const Expr::Node*, bool> seen;
  std::vector<const Expr::Node*> order;
  collect(e.node(), seen, order);

  std::string out = "{\"nodes\":[";
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Expr::Node* n = order[i];
    if (i) out += ',';
    out += "{\"id\":" + std::to_string(n->id) + ",\"kind\":\"" +
           Expr::kind_name(n->kind) + "\",\"children\":[";
    if (n->a) out += std::to_string(n->a->id);
    if (n->b) out += "," + std::to_string(n->b->id);
    out += ']';
    if (n->kind == Expr::Kind::Constant)
      out += ",\"value\":" + format_double(n->value);
    if (n->kind == Expr::Kind::Parameter) out += ",\"name\":\"" + n->name + '"';
    int layer = -1;
    if (n->kind == Expr::Kind::Parameter) layer = 0;
    if (layers) {
      auto it = layers->find(n->id);
      if (it != layers->end()) layer = it->second;
    }
    if (layer >= 0) out += ",\"layer\":" + std::to_string(layer);
    out += '}';
  }
  out += "],\"root\":" + std::to_string(e.node()->id) + "}";
  return out;
}

namespace {

struct Parser {
  std::string_view s;
  std::size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw ExprError("parse_infix: " + what + " at offset " +
                    std::to_string(pos));
  }

  Expr expression() {
    Expr lhs = term();
    for (;;) {
      skip();
      if (eat('+')) lhs = lhs + term();
      else if (eat('-')) lhs = lhs - term();
      else return lhs;
    }
  }
  Expr term() {
    Expr lhs = factor();
    for (;;) {
      skip();
      if (eat('*')) lhs = lhs * factor();
      else if (eat('/')) lhs = lhs / factor();
      else return lhs;
    }
  }
  Expr factor() {
    skip();
    if (eat('-')) return -factor();
    return primary();
  }
  Expr primary() {
    skip();
    if (pos >= s.size()) fail("unexpected end of input");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      Expr e = expression();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s.data() + pos;
      const char* end = s.data() + s.size();
      double v = 0.0;
      auto res = std::from_chars(begin, end, v);
      if (res.ec != std::errc()) fail("bad number");
      pos += static_cast<std::size_t>(res.ptr - begin);
      return Expr::constant(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) ||
              s[pos] == '_'))
        ++pos;
      std::string name(s.substr(start, pos - start));
      if (name == "sqrt" || name == "abs") {
        if (!eat('(')) fail("expected '(' after " + name);
        Expr arg = expression();
        if (!eat(')')) fail("expected ')'");
        return name == "sqrt" ? Expr::sqrt(arg) : Expr::abs(arg);
      }
      return Expr::parameter(std::move(name));
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

Expr parse_infix(std::string_view text) {
  Parser p{text};
  Expr e = p.expression();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing input");
  return e;
}

}  // namespace effham
