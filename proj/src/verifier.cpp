#include "malevic/verifier.hpp"

#include <vector>

#include <fmt/format.h>

#include "malevic/error.hpp"

namespace malevic {

namespace {

struct Token {
  std::string_view text;
  std::size_t offset = 0;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ' ') {
      if (i == start) {
        throw ParseError(i, "unexpected whitespace");
      }
      tokens.push_back({text.substr(start, i - start), start});
      start = i + 1;
    }
  }
  return tokens;
}

}  // namespace

ParsedQuery parse_sentence(std::string_view text) {
  if (text.empty()) throw ParseError(0, "empty sentence");
  const auto tokens = tokenize(text);
  auto at = [&](std::size_t i, std::string_view expected) -> const Token& {
    if (i >= tokens.size()) {
      throw ParseError(text.size(), fmt::format("sentence ends early, expected {}", expected));
    }
    return tokens[i];
  };

  const auto& the = at(0, "'The'");
  if (the.text != "The") throw ParseError(the.offset, fmt::format("expected 'The', got '{}'", the.text));

  ParsedQuery q;
  const auto& color = at(1, "a color");
  const auto c = parse_color(color.text);
  if (!c) throw ParseError(color.offset, fmt::format("unknown color '{}'", color.text));
  q.color = *c;

  const auto& shape = at(2, "a shape");
  const auto s = parse_shape(shape.text);
  if (!s) throw ParseError(shape.offset, fmt::format("unknown shape '{}'", shape.text));
  q.shape_mention = *s;

  const auto& is = at(3, "'is'");
  if (is.text != "is") throw ParseError(is.offset, fmt::format("expected 'is', got '{}'", is.text));

  const auto& article = at(4, "an article");
  if (article.text != "a" && article.text != "the") {
    throw ParseError(article.offset, fmt::format("expected 'a' or 'the', got '{}'", article.text));
  }

  const auto& adjective = at(5, "a size adjective");
  const auto a = parse_adjective(adjective.text);
  if (!a) throw ParseError(adjective.offset, fmt::format("unknown adjective '{}'", adjective.text));
  q.adjective = *a;
  q.form = is_superlative(*a) ? SentenceForm::kSuperlative : SentenceForm::kPositive;
  if ((article.text == "the") != (q.form == SentenceForm::kSuperlative)) {
    throw ParseError(article.offset, fmt::format("article '{}' does not fit '{}'", article.text,
                                                 adjective.text));
  }

  const auto& head = at(6, "a head noun");
  if (head.text != "object") {
    q.head = parse_shape(head.text);
    if (!q.head) throw ParseError(head.offset, fmt::format("unknown head noun '{}'", head.text));
  }

  if (tokens.size() > 7) {
    throw ParseError(tokens[7].offset, fmt::format("unexpected trailing '{}'", tokens[7].text));
  }
  return q;
}

ObjectId resolve_target(const Scene& scene, const ParsedQuery& query) {
  // In a shape-homogeneous scene matching on (color, shape) is matching on color.
  std::optional<ObjectId> found;
  int matches = 0;
  for (const auto& o : scene.objects) {
    if (o.color == query.color && o.shape == query.shape_mention) {
      ++matches;
      found = o.id;
    }
  }
  if (matches == 0) {
    throw Error(ErrorCode::kNoReferent,
                fmt::format("no {} {} in scene {}", to_string(query.color),
                            to_string(query.shape_mention), scene.scene_id));
  }
  if (matches > 1) {
    throw Error(ErrorCode::kAmbiguousReferent,
                fmt::format("{} objects match the {} {} in scene {}", matches,
                            to_string(query.color), to_string(query.shape_mention), scene.scene_id));
  }
  return *found;
}

ReferenceSet query_reference(const Scene& scene, const ParsedQuery& query) {
  if (!query.head || scene.shape_homogeneous()) return whole_scene(scene);
  return restrict(scene, *query.head);
}

Verdict evaluate_detailed(const Scene& scene, const ParsedQuery& query, const KMode& mode) {
  Verdict v;
  v.target = resolve_target(scene, query);

  if (query.form == SentenceForm::kSuperlative) {
    v.reference = whole_scene(scene);
    const auto [biggest, smallest] = superlative(v.reference);
    v.truth = query.adjective == Adjective::kBiggest ? v.target == biggest : v.target == smallest;
    return v;
  }

  v.reference = query_reference(scene, query);
  VagueK k = std::visit(
      [](const auto& m) -> VagueK {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, RecordedK>) {
          return m.k;
        } else if constexpr (std::is_same_v<T, SharpK>) {
          return VagueK::sharp(m.value);
        } else {
          Rng rng = make_rng(m.seed);
          return sample_k(m.config, rng);
        }
      },
      mode);
  v.k = k.value;
  v.judgment = judge(scene.object(v.target), v.reference, k);
  v.truth = v.judgment->is_big == (query.adjective == Adjective::kBig);
  return v;
}

bool evaluate(const Scene& scene, const ParsedQuery& query, const KMode& mode) {
  return evaluate_detailed(scene, query, mode).truth;
}

}  // namespace malevic
