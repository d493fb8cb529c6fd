#pragma once

#include <array>
#include <charconv>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace prefpipe::action {

/// Screen-space pixel position. Both components are non-negative.
struct Coordinate {
  int x = 0;
  int y = 0;
  friend bool operator==(const Coordinate&, const Coordinate&) = default;
};

enum class ActionKind {
  Click,
  LeftDouble,
  RightSingle,
  Drag,
  Hotkey,
  TypeText,
  Scroll,
  Wait,
  Finished,
  CallUser,
};

enum class ScrollDirection { Up, Down, Left, Right };

struct Click {
  Coordinate point;
  friend bool operator==(const Click&, const Click&) = default;
};
struct LeftDouble {
  Coordinate point;
  friend bool operator==(const LeftDouble&, const LeftDouble&) = default;
};
struct RightSingle {
  Coordinate point;
  friend bool operator==(const RightSingle&, const RightSingle&) = default;
};
struct Drag {
  Coordinate start;
  Coordinate end;
  friend bool operator==(const Drag&, const Drag&) = default;
};
struct Hotkey {
  std::vector<std::string> keys;  // nonempty lowercase tokens
  friend bool operator==(const Hotkey&, const Hotkey&) = default;
};
struct TypeText {
  std::string content;  // may be empty, always present
  friend bool operator==(const TypeText&, const TypeText&) = default;
};
struct Scroll {
  Coordinate point;
  ScrollDirection direction = ScrollDirection::Down;
  friend bool operator==(const Scroll&, const Scroll&) = default;
};
struct Wait {
  friend bool operator==(const Wait&, const Wait&) = default;
};
struct Finished {
  friend bool operator==(const Finished&, const Finished&) = default;
};
struct CallUser {
  friend bool operator==(const CallUser&, const CallUser&) = default;
};

/// One GUI action. The alternative order matches ActionKind.
using Action = std::variant<Click, LeftDouble, RightSingle, Drag, Hotkey,
                            TypeText, Scroll, Wait, Finished, CallUser>;

inline ActionKind kind_of(const Action& a) {
  return static_cast<ActionKind>(a.index());
}

inline std::string_view kind_name(ActionKind k) {
  switch (k) {
    case ActionKind::Click: return "click";
    case ActionKind::LeftDouble: return "left_double";
    case ActionKind::RightSingle: return "right_single";
    case ActionKind::Drag: return "drag";
    case ActionKind::Hotkey: return "hotkey";
    case ActionKind::TypeText: return "type";
    case ActionKind::Scroll: return "scroll";
    case ActionKind::Wait: return "wait";
    case ActionKind::Finished: return "finished";
    case ActionKind::CallUser: return "call_user";
  }
  return "?";
}

enum class ParseErrorCategory {
  InvalidCoordinate,
  UnknownAction,
  MalformedSyntax,
  MissingArgument,
  OutOfBounds,
};

inline std::string_view category_name(ParseErrorCategory c) {
  switch (c) {
    case ParseErrorCategory::InvalidCoordinate: return "InvalidCoordinate";
    case ParseErrorCategory::UnknownAction: return "UnknownAction";
    case ParseErrorCategory::MalformedSyntax: return "MalformedSyntax";
    case ParseErrorCategory::MissingArgument: return "MissingArgument";
    case ParseErrorCategory::OutOfBounds: return "OutOfBounds";
  }
  return "?";
}

/// Categorized parse failure. Exactly one category applies per input; the
/// span is the half-open byte range of the offending region in the input.
struct ParseError {
  ParseErrorCategory category = ParseErrorCategory::MalformedSyntax;
  std::string message;
  std::size_t span_begin = 0;
  std::size_t span_end = 0;
  friend bool operator==(const ParseError&, const ParseError&) = default;
};

using ParseResult = std::variant<Action, ParseError>;

inline bool is_action(const ParseResult& r) { return r.index() == 0; }
inline bool is_error(const ParseResult& r) { return r.index() == 1; }

namespace detail {

inline bool is_ws(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}
inline bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || c == '_'; }
inline bool is_ident(char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9');
}
inline bool is_key_token_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
}

struct RawArg {
  std::string key;
  std::string value;        // unescaped
  std::size_t value_begin;  // byte offsets of the quoted region, quotes included
  std::size_t value_end;
};

struct ArgSpec {
  std::string_view key;
  enum class Kind { Coordinate, Direction, KeyList, Text } kind;
};

struct ActionSpec {
  std::string_view name;
  ActionKind kind;
  std::vector<ArgSpec> args;
};

inline const std::vector<ActionSpec>& vocabulary() {
  using K = ArgSpec::Kind;
  static const std::vector<ActionSpec> specs = {
      {"click", ActionKind::Click, {{"start_box", K::Coordinate}}},
      {"left_double", ActionKind::LeftDouble, {{"start_box", K::Coordinate}}},
      {"right_single", ActionKind::RightSingle, {{"start_box", K::Coordinate}}},
      {"drag",
       ActionKind::Drag,
       {{"start_box", K::Coordinate}, {"end_box", K::Coordinate}}},
      {"hotkey", ActionKind::Hotkey, {{"key", K::KeyList}}},
      {"type", ActionKind::TypeText, {{"content", K::Text}}},
      {"scroll",
       ActionKind::Scroll,
       {{"point", K::Coordinate}, {"direction", K::Direction}}},
      {"wait", ActionKind::Wait, {}},
      {"finished", ActionKind::Finished, {}},
      {"call_user", ActionKind::CallUser, {}},
  };
  return specs;
}

/// Parses "(x,y)" with optional spaces around the numbers. Integer pixels
/// only; negative, fractional, or overflowing values are rejected.
inline std::optional<Coordinate> parse_coordinate(std::string_view v) {
  std::size_t i = 0;
  auto skip = [&] { while (i < v.size() && is_ws(v[i])) ++i; };
  auto read_int = [&]() -> std::optional<int> {
    skip();
    std::size_t start = i;
    while (i < v.size() && v[i] >= '0' && v[i] <= '9') ++i;
    if (i == start) return std::nullopt;
    int out = 0;
    auto rc = std::from_chars(v.data() + start, v.data() + i, out);
    if (rc.ec != std::errc{}) return std::nullopt;
    return out;
  };
  skip();
  if (i >= v.size() || v[i] != '(') return std::nullopt;
  ++i;
  auto x = read_int();
  if (!x) return std::nullopt;
  skip();
  if (i >= v.size() || v[i] != ',') return std::nullopt;
  ++i;
  auto y = read_int();
  if (!y) return std::nullopt;
  skip();
  if (i >= v.size() || v[i] != ')') return std::nullopt;
  ++i;
  skip();
  if (i != v.size()) return std::nullopt;
  return Coordinate{*x, *y};
}

inline void append_escaped(std::string& out, std::string_view raw) {
  for (char c : raw) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\'': out += "\\'"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
}

}  // namespace detail

/// Parses a function-call-style action string, e.g. "click(start_box='(19,60)')".
///
/// Total over arbitrary byte input: always returns either a typed Action or
/// a ParseError with the most specific applicable category. Single pass,
/// linear in input length.
inline ParseResult parse_action(std::string_view text) {
  using detail::is_ws;
  auto err = [&](ParseErrorCategory cat, std::string msg, std::size_t b,
                 std::size_t e) -> ParseResult {
    return ParseError{cat, std::move(msg), b, e};
  };
  auto syntax = [&](std::string msg, std::size_t b, std::size_t e) {
    return err(ParseErrorCategory::MalformedSyntax, std::move(msg), b, e);
  };

  std::size_t i = 0;
  const std::size_t n = text.size();
  auto skip_ws = [&] { while (i < n && is_ws(text[i])) ++i; };

  skip_ws();
  std::size_t name_begin = i;
  while (i < n && detail::is_ident(text[i])) ++i;
  std::size_t name_end = i;
  if (name_end == name_begin ||
      !detail::is_ident_start(text[name_begin])) {
    return syntax("expected action name", name_begin,
                  std::min(name_begin + 1, n));
  }
  std::string_view name = text.substr(name_begin, name_end - name_begin);

  skip_ws();
  if (i >= n || text[i] != '(') {
    return syntax("expected '(' after action name", i, std::min(i + 1, n));
  }
  std::size_t args_begin = i;
  ++i;

  // Collect key='value' arguments up to the closing parenthesis.
  std::vector<detail::RawArg> args;
  skip_ws();
  if (i < n && text[i] == ')') {
    ++i;
  } else {
    while (true) {
      skip_ws();
      std::size_t key_begin = i;
      while (i < n && detail::is_ident(text[i])) ++i;
      if (i == key_begin || !detail::is_ident_start(text[key_begin])) {
        return syntax("expected argument key", key_begin,
                      std::min(key_begin + 1, n));
      }
      std::string key(text.substr(key_begin, i - key_begin));
      skip_ws();
      if (i >= n || text[i] != '=') {
        return syntax("expected '=' after argument key", i, std::min(i + 1, n));
      }
      ++i;
      skip_ws();
      if (i >= n || text[i] != '\'') {
        return syntax("expected single-quoted value", i, std::min(i + 1, n));
      }
      std::size_t value_begin = i;
      ++i;
      std::string value;
      bool closed = false;
      while (i < n) {
        char c = text[i];
        if (c == '\'') {
          ++i;
          closed = true;
          break;
        }
        if (c == '\\') {
          if (i + 1 >= n) break;
          char esc = text[i + 1];
          switch (esc) {
            case '\\': value += '\\'; break;
            case '\'': value += '\''; break;
            case 'n': value += '\n'; break;
            case 'r': value += '\r'; break;
            default:
              return syntax("unknown escape sequence", i, i + 2);
          }
          i += 2;
          continue;
        }
        value += c;
        ++i;
      }
      if (!closed) {
        return syntax("unterminated quoted value", value_begin, n);
      }
      args.push_back({std::move(key), std::move(value), value_begin, i});
      skip_ws();
      if (i < n && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < n && text[i] == ')') {
        ++i;
        break;
      }
      return syntax("expected ',' or ')' in argument list", i,
                    std::min(i + 1, n));
    }
  }
  std::size_t args_end = i;
  skip_ws();
  if (i != n) {
    return syntax("trailing characters after action", i, n);
  }

  const detail::ActionSpec* spec = nullptr;
  for (const auto& s : detail::vocabulary()) {
    if (s.name == name) {
      spec = &s;
      break;
    }
  }
  if (spec == nullptr) {
    return err(ParseErrorCategory::UnknownAction,
               "unknown action '" + std::string(name) + "'", name_begin,
               name_end);
  }

  // Structural key checks: duplicates and keys outside the action's schema.
  for (std::size_t a = 0; a < args.size(); ++a) {
    for (std::size_t b = a + 1; b < args.size(); ++b) {
      if (args[a].key == args[b].key) {
        return syntax("duplicate argument '" + args[a].key + "'",
                      args[b].value_begin, args[b].value_end);
      }
    }
    bool known = false;
    for (const auto& as : spec->args) {
      if (as.key == args[a].key) known = true;
    }
    if (!known) {
      return syntax("unexpected argument '" + args[a].key + "' for '" +
                        std::string(name) + "'",
                    args[a].value_begin, args[a].value_end);
    }
  }
  for (const auto& as : spec->args) {
    bool present = false;
    for (const auto& ra : args) {
      if (ra.key == as.key) present = true;
    }
    if (!present) {
      return err(ParseErrorCategory::MissingArgument,
                 "missing required argument '" + std::string(as.key) +
                     "' for '" + std::string(name) + "'",
                 args_begin, args_end);
    }
  }

  auto find_arg = [&](std::string_view key) -> const detail::RawArg& {
    for (const auto& ra : args) {
      if (ra.key == key) return ra;
    }
    return args.front();  // unreachable: presence checked above
  };

  auto coord = [&](std::string_view key,
                   Coordinate& out) -> std::optional<ParseResult> {
    const auto& ra = find_arg(key);
    auto c = detail::parse_coordinate(ra.value);
    if (!c) {
      return err(ParseErrorCategory::InvalidCoordinate,
                 "coordinate '" + ra.value + "' is not of the form '(x,y)'",
                 ra.value_begin, ra.value_end);
    }
    out = *c;
    return std::nullopt;
  };

  switch (spec->kind) {
    case ActionKind::Click: {
      Click a;
      if (auto e = coord("start_box", a.point)) return *e;
      return Action{a};
    }
    case ActionKind::LeftDouble: {
      LeftDouble a;
      if (auto e = coord("start_box", a.point)) return *e;
      return Action{a};
    }
    case ActionKind::RightSingle: {
      RightSingle a;
      if (auto e = coord("start_box", a.point)) return *e;
      return Action{a};
    }
    case ActionKind::Drag: {
      Drag a;
      if (auto e = coord("start_box", a.start)) return *e;
      if (auto e = coord("end_box", a.end)) return *e;
      return Action{a};
    }
    case ActionKind::Hotkey: {
      const auto& ra = find_arg("key");
      Hotkey a;
      std::size_t p = 0;
      const std::string& v = ra.value;
      while (p < v.size()) {
        while (p < v.size() && v[p] == ' ') ++p;
        std::size_t start = p;
        while (p < v.size() && v[p] != ' ') ++p;
        if (p == start) break;
        std::string tok = v.substr(start, p - start);
        for (char c : tok) {
          if (!detail::is_key_token_char(c)) {
            return syntax("key names must be lowercase tokens: '" + tok + "'",
                          ra.value_begin, ra.value_end);
          }
        }
        a.keys.push_back(std::move(tok));
      }
      if (a.keys.empty()) {
        return syntax("hotkey requires at least one key name", ra.value_begin,
                      ra.value_end);
      }
      return Action{a};
    }
    case ActionKind::TypeText: {
      TypeText a;
      a.content = find_arg("content").value;
      return Action{a};
    }
    case ActionKind::Scroll: {
      Scroll a;
      if (auto e = coord("point", a.point)) return *e;
      const auto& ra = find_arg("direction");
      if (ra.value == "up") a.direction = ScrollDirection::Up;
      else if (ra.value == "down") a.direction = ScrollDirection::Down;
      else if (ra.value == "left") a.direction = ScrollDirection::Left;
      else if (ra.value == "right") a.direction = ScrollDirection::Right;
      else
        return syntax("scroll direction must be up, down, left or right",
                      ra.value_begin, ra.value_end);
      return Action{a};
    }
    case ActionKind::Wait: return Action{Wait{}};
    case ActionKind::Finished: return Action{Finished{}};
    case ActionKind::CallUser: return Action{CallUser{}};
  }
  return syntax("unreachable", 0, n);
}

/// Renders the canonical single-line form; parse_action(render_action(a)) == a.
inline std::string render_action(const Action& a) {
  struct Renderer {
    static std::string box(const Coordinate& c) {
      return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
    }
    std::string operator()(const Click& a) const {
      return "click(start_box='" + box(a.point) + "')";
    }
    std::string operator()(const LeftDouble& a) const {
      return "left_double(start_box='" + box(a.point) + "')";
    }
    std::string operator()(const RightSingle& a) const {
      return "right_single(start_box='" + box(a.point) + "')";
    }
    std::string operator()(const Drag& a) const {
      return "drag(start_box='" + box(a.start) + "', end_box='" + box(a.end) +
             "')";
    }
    std::string operator()(const Hotkey& a) const {
      std::string joined;
      for (std::size_t i = 0; i < a.keys.size(); ++i) {
        if (i > 0) joined += ' ';
        joined += a.keys[i];
      }
      return "hotkey(key='" + joined + "')";
    }
    std::string operator()(const TypeText& a) const {
      std::string out = "type(content='";
      detail::append_escaped(out, a.content);
      out += "')";
      return out;
    }
    std::string operator()(const Scroll& a) const {
      std::string_view dir;
      switch (a.direction) {
        case ScrollDirection::Up: dir = "up"; break;
        case ScrollDirection::Down: dir = "down"; break;
        case ScrollDirection::Left: dir = "left"; break;
        case ScrollDirection::Right: dir = "right"; break;
      }
      return "scroll(point='" + box(a.point) + "', direction='" +
             std::string(dir) + "')";
    }
    std::string operator()(const Wait&) const { return "wait()"; }
    std::string operator()(const Finished&) const { return "finished()"; }
    std::string operator()(const CallUser&) const { return "call_user()"; }
  };
  return std::visit(Renderer{}, a);
}

/// Collects every coordinate carried by the action (empty for nullary kinds).
inline std::vector<Coordinate> coordinates_of(const Action& a) {
  struct Collect {
    std::vector<Coordinate> out;
    void operator()(const Click& x) { out.push_back(x.point); }
    void operator()(const LeftDouble& x) { out.push_back(x.point); }
    void operator()(const RightSingle& x) { out.push_back(x.point); }
    void operator()(const Drag& x) {
      out.push_back(x.start);
      out.push_back(x.end);
    }
    void operator()(const Scroll& x) { out.push_back(x.point); }
    void operator()(const Hotkey&) {}
    void operator()(const TypeText&) {}
    void operator()(const Wait&) {}
    void operator()(const Finished&) {}
    void operator()(const CallUser&) {}
  } c;
  std::visit(c, a);
  return c.out;
}

/// Checks every coordinate against [0,width) x [0,height).
inline std::optional<ParseError> validate_bounds(const Action& a, int width,
                                                 int height) {
  for (const Coordinate& c : coordinates_of(a)) {
    if (c.x < 0 || c.x >= width || c.y < 0 || c.y >= height) {
      return ParseError{ParseErrorCategory::OutOfBounds,
                        "coordinate (" + std::to_string(c.x) + "," +
                            std::to_string(c.y) + ") outside " +
                            std::to_string(width) + "x" +
                            std::to_string(height) + " screen",
                        0, 0};
    }
  }
  return std::nullopt;
}

}  // namespace prefpipe::action
