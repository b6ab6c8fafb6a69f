#include "tsem/syntax.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

#include "tsem/error.hpp"
#include "tsem/lexicon.hpp"

namespace tsem {

namespace {

struct Token {
  enum Kind { Open, Close, Atom } kind;
  std::string text;
  std::size_t offset;
};

bool is_delimiter(char c) {
  return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == '"';
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(') {
      out.push_back({Token::Open, "(", i++});
    } else if (c == ')') {
      out.push_back({Token::Close, ")", i++});
    } else if (c == '"') {
      std::size_t start = i++;
      std::string value;
      bool closed = false;
      while (i < text.size()) {
        char d = text[i++];
        if (d == '\\' && i < text.size()) {
          value.push_back(text[i++]);
        } else if (d == '"') {
          closed = true;
          break;
        } else {
          value.push_back(d);
        }
      }
      if (!closed) throw Error(ErrorCode::UnbalancedParens, "unterminated string at offset " + std::to_string(start));
      if (value.empty()) throw Error(ErrorCode::EmptyExpression, "empty quoted token at offset " + std::to_string(start));
      out.push_back({Token::Atom, std::move(value), start});
    } else {
      std::size_t start = i;
      while (i < text.size() && !is_delimiter(text[i])) ++i;
      out.push_back({Token::Atom, std::string(text.substr(start, i - start)), start});
    }
  }
  return out;
}

// Strips a leading `name=` label line as printed in tree dumps.
std::string_view strip_label(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  std::size_t j = i;
  while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
  if (j > i && j < text.size() && text[j] == '=') return text.substr(j + 1);
  return text;
}

class Reader {
 public:
  explicit Reader(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  bool done() const { return pos_ >= tokens_.size(); }

  SynTree read() {
    const Token& t = tokens_[pos_++];
    if (t.kind == Token::Atom) return SynTree::leaf(t.text);
    if (t.kind == Token::Close) {
      throw Error(ErrorCode::UnbalancedParens, "unexpected ')' at offset " + std::to_string(t.offset));
    }
    std::vector<SynTree> children;
    while (true) {
      if (done()) throw Error(ErrorCode::UnbalancedParens, "missing ')' for '(' at offset " + std::to_string(t.offset));
      if (tokens_[pos_].kind == Token::Close) {
        ++pos_;
        break;
      }
      children.push_back(read());
    }
    if (children.empty()) throw Error(ErrorCode::EmptyExpression, "empty list at offset " + std::to_string(t.offset));
    return SynTree::node(std::move(children));
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

bool needs_quotes(const std::string& token) {
  return std::any_of(token.begin(), token.end(), [](char c) { return is_delimiter(c) || c == '\\'; });
}

void print_into(std::ostringstream& out, const SynTree& t, bool quote_leaves) {
  if (t.is_leaf()) {
    if (quote_leaves || needs_quotes(t.token)) {
      out << '"';
      for (char c : t.token) {
        if (c == '"' || c == '\\') out << '\\';
        out << c;
      }
      out << '"';
    } else {
      out << t.token;
    }
    return;
  }
  out << '(';
  bool lexeme = t.children.front().is_leaf() && t.children.front().token.rfind("lexeme", 0) == 0;
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    if (i) out << ' ';
    print_into(out, t.children[i], lexeme && i > 0);
  }
  out << ')';
}

constexpr std::array<std::pair<std::string_view, Category>, 19> kCategoryNames{{
    {"S", Category::S},         {"Cl", Category::Cl},     {"VP", Category::VP},     {"VPSlash", Category::VPSlash},
    {"NP", Category::NP},       {"CN", Category::CN},     {"N", Category::N},       {"Det", Category::Det},
    {"Quant", Category::Quant}, {"Num", Category::Num},   {"Tense", Category::Tense}, {"Pol", Category::Pol},
    {"Adv", Category::Adv},     {"V2", Category::V2},     {"PN", Category::PN},     {"Pron", Category::Pron},
    {"VV", Category::VV},       {"V", Category::V},       {"Subj", Category::Subj},
}};

TypedTree check(const SynTree& tree, const SignatureTable& sigs, const Lexicon& lexicon) {
  const std::string& head = tree.head();
  if (!tree.is_leaf() && !tree.children.front().is_leaf()) {
    throw Error(ErrorCode::UnknownConstructor, "node without constructor head: " + print_tree(tree));
  }
  const Signature* sig = sigs.find(head);
  if (!sig) throw Error(ErrorCode::UnknownConstructor, head);

  std::vector<SynTree> args = tree.is_leaf() ? std::vector<SynTree>{} : tree.args();
  std::size_t expected = sig->lexeme ? 1 : sig->args.size();
  if (args.size() != expected) {
    throw Error(ErrorCode::ArityMismatch, head + " expects " + std::to_string(expected) + " argument(s), got " +
                                              std::to_string(args.size()));
  }

  if (sig->wrapper) {
    TypedTree inner = check(args[0], sigs, lexicon);
    if (inner.category != sig->args[0]) {
      throw Error(ErrorCode::CategoryMismatch, std::string(to_string(inner.category)) + " where " +
                                                   std::string(to_string(sig->args[0])) + " expected under " + head);
    }
    return inner;
  }

  TypedTree out{sig->constructor, sig->result, {}, std::nullopt};
  if (sig->lexeme) {
    if (!args[0].is_leaf()) throw Error(ErrorCode::ArityMismatch, head + " expects a lexeme token");
    const LexEntry& entry = lexicon.lookup(args[0].token, sig->result);
    out.lexeme = entry.lemma;
    return out;
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    TypedTree child = check(args[i], sigs, lexicon);
    if (child.category != sig->args[i]) {
      throw Error(ErrorCode::CategoryMismatch, std::string(to_string(child.category)) + " where " +
                                                   std::string(to_string(sig->args[i])) + " expected as argument " +
                                                   std::to_string(i + 1) + " of " + head);
    }
    out.children.push_back(std::move(child));
  }
  return out;
}

}  // namespace

const std::string& SynTree::head() const { return is_leaf() ? token : children.front().token; }

std::vector<SynTree> SynTree::args() const {
  if (children.size() <= 1) return {};
  return {children.begin() + 1, children.end()};
}

SynTree read_tree(std::string_view text) {
  Reader reader(tokenize(strip_label(text)));
  if (reader.done()) throw Error(ErrorCode::EmptyExpression, "no expression in input");
  std::vector<SynTree> items;
  while (!reader.done()) items.push_back(reader.read());

  // `w1 ... wk (expr)`: bare wrapper words applied to a final list.
  SynTree result = std::move(items.back());
  for (std::size_t i = items.size() - 1; i-- > 0;) {
    if (!items[i].is_leaf() || result.is_leaf()) {
      throw Error(ErrorCode::StrayToken, "trailing input after expression: " + print_tree(items[i + 1]));
    }
    result = SynTree::node({std::move(items[i]), std::move(result)});
  }
  return result;
}

std::string print_tree(const SynTree& tree) {
  std::ostringstream out;
  print_into(out, tree, false);
  return out.str();
}

std::string_view to_string(Category c) {
  for (const auto& [name, cat] : kCategoryNames) {
    if (cat == c) return name;
  }
  return "?";
}

Category parse_category(std::string_view name) {
  for (const auto& [n, cat] : kCategoryNames) {
    if (n == name) return cat;
  }
  throw Error(ErrorCode::UnknownCategory, std::string(name));
}

std::string_view to_string(Tense t) {
  switch (t) {
    case Tense::Present: return "present";
    case Tense::Past: return "past";
    case Tense::PresentProgressive: return "presentProgressive";
    case Tense::PastProgressive: return "pastProgressive";
  }
  return "?";
}

bool is_past(Tense t) { return t == Tense::Past || t == Tense::PastProgressive; }
bool is_progressive(Tense t) { return t == Tense::PresentProgressive || t == Tense::PastProgressive; }

SignatureTable SignatureTable::parse(std::string_view text) {
  SignatureTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.rfind("# version", 0) == 0) {
      table.version_ = line.substr(9);
      table.version_.erase(0, table.version_.find_first_not_of(' '));
      continue;
    }
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> words;
    for (std::string w; fields >> w;) words.push_back(w);
    if (words.empty()) continue;
    if (words.size() < 2) {
      throw Error(ErrorCode::DataFileError, "signature line " + std::to_string(lineno) + ": missing result category");
    }
    Signature sig;
    sig.constructor = words[0];
    try {
      sig.result = parse_category(words[1]);
      for (std::size_t i = 2; i < words.size(); ++i) {
        if (words[i] == "@lexeme") sig.lexeme = true;
        else if (words[i] == "@wrapper") sig.wrapper = true;
        else if (words[i] == "@extension") sig.extension = true;
        else sig.args.push_back(parse_category(words[i]));
      }
    } catch (const Error& e) {
      throw Error(e.code(), "signature line " + std::to_string(lineno) + ": " + e.what());
    }
    if (sig.wrapper && sig.args.size() != 1) {
      throw Error(ErrorCode::DataFileError, "signature line " + std::to_string(lineno) + ": wrapper must be unary");
    }
    if (!table.table_.emplace(sig.constructor, sig).second) {
      throw Error(ErrorCode::DataFileError, "duplicate constructor " + sig.constructor);
    }
  }
  return table;
}

SignatureTable SignatureTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::DataFileError, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const Signature* SignatureTable::find(std::string_view constructor) const {
  auto it = table_.find(constructor);
  return it == table_.end() ? nullptr : &it->second;
}

TypedTree typecheck(const SynTree& tree, const SignatureTable& signatures, const Lexicon& lexicon) {
  TypedTree out = check(tree, signatures, lexicon);
  if (out.category != Category::S) {
    throw Error(ErrorCode::CategoryMismatch, std::string(to_string(out.category)) + " at root where S expected");
  }
  return out;
}

Tense tense_of(const TypedTree& useCl) {
  const std::string& c = useCl.child(0).constructor;
  if (c == "past") return Tense::Past;
  if (c == "present") return Tense::Present;
  if (c == "pastProgressive") return Tense::PastProgressive;
  if (c == "presentProgressive") return Tense::PresentProgressive;
  throw Error(ErrorCode::CategoryMismatch, "unknown tense " + c);
}

Polarity polarity_of(const TypedTree& useCl) {
  return useCl.child(1).constructor == "pNeg" ? Polarity::Negative : Polarity::Positive;
}

}  // namespace tsem
