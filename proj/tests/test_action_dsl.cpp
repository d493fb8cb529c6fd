#include "prefpipe/action.hpp"

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "prefpipe/rng.hpp"

namespace pa = prefpipe::action;
using pa::Action;
using pa::Coordinate;
using pa::ParseError;
using pa::ParseErrorCategory;

namespace {

const ParseError& error_of(const pa::ParseResult& r) {
  return std::get<ParseError>(r);
}
const Action& action_of(const pa::ParseResult& r) { return std::get<Action>(r); }

// Structured generator used by the round-trip property. Independent of the
// renderer: it builds Action values directly, including awkward content.
Action random_action(prefpipe::SplitMix64& rng) {
  auto coord = [&] {
    return Coordinate{static_cast<int>(rng.bounded(4000)),
                      static_cast<int>(rng.bounded(4000))};
  };
  auto content = [&] {
    static const std::string alphabet =
        "abcXYZ 019_-.:/\\'\"\n\r\t()=,{}[]\xc3\xa9";
    std::string s;
    std::size_t len = rng.bounded(24);
    for (std::size_t i = 0; i < len; ++i) {
      s += alphabet[rng.bounded(alphabet.size())];
    }
    return s;
  };
  switch (rng.bounded(10)) {
    case 0: return pa::Click{coord()};
    case 1: return pa::LeftDouble{coord()};
    case 2: return pa::RightSingle{coord()};
    case 3: return pa::Drag{coord(), coord()};
    case 4: {
      static const std::vector<std::string> names = {"ctrl", "alt", "shift",
                                                     "c", "v", "f5", "tab"};
      pa::Hotkey h;
      std::size_t k = 1 + rng.bounded(3);
      for (std::size_t i = 0; i < k; ++i) {
        h.keys.push_back(names[rng.bounded(names.size())]);
      }
      return h;
    }
    case 5: return pa::TypeText{content()};
    case 6:
      return pa::Scroll{coord(), static_cast<pa::ScrollDirection>(
                                     rng.bounded(4))};
    case 7: return pa::Wait{};
    case 8: return pa::Finished{};
    default: return pa::CallUser{};
  }
}

}  // namespace

TEST(ParseAction, PaperMalformedClickIsInvalidCoordinate) {
  auto r = pa::parse_action("click(start_box='[19,60)')");
  ASSERT_TRUE(pa::is_error(r));
  EXPECT_EQ(error_of(r).category, ParseErrorCategory::InvalidCoordinate);
  // Span points at the offending coordinate text.
  EXPECT_GT(error_of(r).span_end, error_of(r).span_begin);
  EXPECT_FALSE(error_of(r).message.empty());
}

TEST(ParseAction, NullaryFinished) {
  auto r = pa::parse_action("finished()");
  ASSERT_TRUE(pa::is_action(r));
  EXPECT_EQ(action_of(r), Action{pa::Finished{}});
}

TEST(ParseAction, WellFormedClick) {
  auto r = pa::parse_action("click(start_box='(19,60)')");
  ASSERT_TRUE(pa::is_action(r));
  EXPECT_EQ(action_of(r), (Action{pa::Click{{19, 60}}}));
}

TEST(ParseAction, UnknownActionName) {
  auto r = pa::parse_action("frobnicate(x='1')");
  ASSERT_TRUE(pa::is_error(r));
  EXPECT_EQ(error_of(r).category, ParseErrorCategory::UnknownAction);
}

TEST(ParseAction, MissingArgument) {
  auto r = pa::parse_action("click()");
  ASSERT_TRUE(pa::is_error(r));
  EXPECT_EQ(error_of(r).category, ParseErrorCategory::MissingArgument);

  auto r2 = pa::parse_action("drag(start_box='(1,2)')");
  ASSERT_TRUE(pa::is_error(r2));
  EXPECT_EQ(error_of(r2).category, ParseErrorCategory::MissingArgument);
}

TEST(ParseAction, MalformedSyntaxVariants) {
  const char* cases[] = {
      "",
      "   ",
      "click(start_box='(1,2)'",       // missing ')'
      "click start_box='(1,2)')",      // missing '('
      "click(start_box=(1,2))",        // unquoted value
      "click(start_box='(1,2)') x",    // trailing garbage
      "click(start_box='(1,2)',)",     // dangling comma
      "wait(x='1')",                   // unexpected argument
      "click(start_box='(1,2)', start_box='(3,4)')",  // duplicate key
      "type(content='a\\qb')",         // unknown escape
      "hotkey(key='')",                // empty key list
      "hotkey(key='Ctrl')",            // uppercase key token
      "scroll(point='(1,2)', direction='sideways')",
      "123()",
  };
  for (const char* c : cases) {
    auto r = pa::parse_action(c);
    ASSERT_TRUE(pa::is_error(r)) << c;
    EXPECT_EQ(error_of(r).category, ParseErrorCategory::MalformedSyntax) << c;
  }
}

TEST(ParseAction, InvalidCoordinateVariants) {
  const char* cases[] = {
      "click(start_box='19,60')",    "click(start_box='(19,60')",
      "click(start_box='(-19,60)')", "click(start_box='(19.5,60)')",
      "click(start_box='(19)')",     "click(start_box='(a,b)')",
      "click(start_box='(99999999999,1)')",
      "drag(start_box='(1,2)', end_box='[3,4)')",
  };
  for (const char* c : cases) {
    auto r = pa::parse_action(c);
    ASSERT_TRUE(pa::is_error(r)) << c;
    EXPECT_EQ(error_of(r).category, ParseErrorCategory::InvalidCoordinate) << c;
  }
}

TEST(ParseAction, WhitespaceTolerance) {
  auto r = pa::parse_action("  drag( start_box = '(1, 2)' , end_box='(3,4)' ) ");
  ASSERT_TRUE(pa::is_action(r));
  EXPECT_EQ(action_of(r), (Action{pa::Drag{{1, 2}, {3, 4}}}));
}

TEST(ParseAction, HotkeyAndTypeAndScroll) {
  auto h = pa::parse_action("hotkey(key='ctrl c')");
  ASSERT_TRUE(pa::is_action(h));
  EXPECT_EQ(action_of(h), (Action{pa::Hotkey{{"ctrl", "c"}}}));

  auto t = pa::parse_action("type(content='')");
  ASSERT_TRUE(pa::is_action(t));
  EXPECT_EQ(action_of(t), Action{pa::TypeText{""}});

  auto s = pa::parse_action("scroll(point='(5,6)', direction='down')");
  ASSERT_TRUE(pa::is_action(s));
  EXPECT_EQ(action_of(s),
            (Action{pa::Scroll{{5, 6}, pa::ScrollDirection::Down}}));
}

TEST(RenderAction, CanonicalForms) {
  const Action click = pa::Click{{19, 60}};
  const Action typing = pa::TypeText{"hi"};
  const Action drag = pa::Drag{{1, 2}, {3, 4}};
  const Action hotkey = pa::Hotkey{{"ctrl", "c"}};
  EXPECT_EQ(pa::render_action(click), "click(start_box='(19,60)')");
  EXPECT_EQ(pa::render_action(typing), "type(content='hi')");
  EXPECT_EQ(pa::render_action(drag), "drag(start_box='(1,2)', end_box='(3,4)')");
  EXPECT_EQ(pa::render_action(hotkey), "hotkey(key='ctrl c')");
  EXPECT_EQ(pa::render_action(pa::Wait{}), "wait()");
}

TEST(RenderAction, EscapesKeepOutputSingleLine) {
  std::string rendered = pa::render_action(pa::TypeText{"a'b\\c\nd\re"});
  EXPECT_EQ(rendered.find('\n'), std::string::npos);
  EXPECT_EQ(rendered.find('\r'), std::string::npos);
  auto back = pa::parse_action(rendered);
  ASSERT_TRUE(pa::is_action(back));
  EXPECT_EQ(action_of(back), Action{pa::TypeText{"a'b\\c\nd\re"}});
}

// Round-trip: parse(render(a)) == a on 10,000 generated actions.
TEST(ActionProperties, ParseRenderRoundTrip10k) {
  prefpipe::SplitMix64 rng(0x5eedf00d);
  for (int i = 0; i < 10000; ++i) {
    Action a = random_action(rng);
    std::string s = pa::render_action(a);
    auto r = pa::parse_action(s);
    ASSERT_TRUE(pa::is_action(r)) << s;
    ASSERT_EQ(action_of(r), a) << s;
  }
}

// Totality: no crash and a definite result on random byte strings <= 4 KiB.
TEST(ActionProperties, TotalOnRandomBytes10k) {
  prefpipe::SplitMix64 rng(0xdeadcafe);
  for (int i = 0; i < 10000; ++i) {
    std::size_t len = rng.bounded(4096);
    std::string s;
    s.reserve(len);
    for (std::size_t j = 0; j < len; ++j) {
      s += static_cast<char>(rng.bounded(256));
    }
    auto r = pa::parse_action(s);
    // Error exclusivity: the result is exactly one alternative, and errors
    // carry exactly one category with a nonempty message.
    if (pa::is_error(r)) {
      EXPECT_FALSE(error_of(r).message.empty());
    }
  }
}

// Mutating one byte of a canonical string still never crashes and yields a
// single categorized outcome.
TEST(ActionProperties, SingleByteMutations) {
  prefpipe::SplitMix64 rng(0xabc123);
  for (int i = 0; i < 2000; ++i) {
    Action a = random_action(rng);
    std::string s = pa::render_action(a);
    if (s.empty()) continue;
    s[rng.bounded(s.size())] = static_cast<char>(rng.bounded(256));
    auto r = pa::parse_action(s);
    (void)r;
  }
  SUCCEED();
}

TEST(ValidateBounds, InteriorAndEdges) {
  const Action interior = pa::Click{{19, 60}};
  const Action off_x = pa::Click{{2000, 60}};
  const Action off_y = pa::Drag{{10, 10}, {10, 1080}};
  const Action last_pixel = pa::Click{{1919, 1079}};

  EXPECT_FALSE(pa::validate_bounds(interior, 1920, 1080));

  auto e = pa::validate_bounds(off_x, 1920, 1080);
  ASSERT_TRUE(e);
  EXPECT_EQ(e->category, ParseErrorCategory::OutOfBounds);
  EXPECT_NE(e->message.find("2000"), std::string::npos);

  // y == height is exclusive.
  auto d = pa::validate_bounds(off_y, 1920, 1080);
  ASSERT_TRUE(d);
  EXPECT_EQ(d->category, ParseErrorCategory::OutOfBounds);

  // Last interior pixel is fine.
  EXPECT_FALSE(pa::validate_bounds(last_pixel, 1920, 1080));
  // Nullary actions have no coordinates to check.
  EXPECT_FALSE(pa::validate_bounds(pa::Finished{}, 1, 1));
}
