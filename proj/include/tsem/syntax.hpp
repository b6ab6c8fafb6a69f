#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tsem {

class Lexicon;

// Raw s-expression tree. A Node's first child is conventionally the constructor
// head, the remaining children are its arguments.
struct SynTree {
  std::string token;              // set for leaves
  std::vector<SynTree> children;  // nonempty for nodes

  static SynTree leaf(std::string token) { return SynTree{std::move(token), {}}; }
  static SynTree node(std::vector<SynTree> children) { return SynTree{{}, std::move(children)}; }

  bool is_leaf() const { return children.empty(); }
  // Head token of a node whose first child is a leaf, or the leaf token itself.
  const std::string& head() const;
  // Arguments of a node (children after the head).
  std::vector<SynTree> args() const;

  friend bool operator==(const SynTree&, const SynTree&) = default;
};

// Parses one s-expression in the GF dump style. Accepts an optional leading
// `label=` line and bare wrapper words preceding a list (`sentence (useCl ...)`),
// which become nested nodes.
SynTree read_tree(std::string_view text);

// Single-line rendering. Tokens that are not plain identifiers are quoted.
std::string print_tree(const SynTree& tree);

enum class Category {
  S, Cl, VP, VPSlash, NP, CN, N, Det, Quant, Num, Tense, Pol, Adv, V2, PN, Pron, VV,
  // repository extensions (see data/signatures.txt)
  V, Subj,
};

std::string_view to_string(Category c);
Category parse_category(std::string_view name);

enum class Tense { Present, Past, PresentProgressive, PastProgressive };
enum class Polarity { Positive, Negative };

std::string_view to_string(Tense t);
bool is_past(Tense t);
bool is_progressive(Tense t);

struct Signature {
  std::string constructor;
  Category result;
  std::vector<Category> args;
  bool lexeme = false;     // single quoted-token argument resolved in the lexicon
  bool wrapper = false;    // stripped at typecheck
  bool extension = false;  // not attested in the published trees
};

// Closed constructor table, loaded from a data file.
class SignatureTable {
 public:
  static SignatureTable load(const std::filesystem::path& path);
  static SignatureTable parse(std::string_view text);

  const Signature* find(std::string_view constructor) const;
  const std::map<std::string, Signature, std::less<>>& entries() const { return table_; }
  const std::string& version() const { return version_; }

 private:
  std::map<std::string, Signature, std::less<>> table_;
  std::string version_;
};

struct TypedTree {
  std::string constructor;
  Category category;
  std::vector<TypedTree> children;
  std::optional<std::string> lexeme;

  const TypedTree& child(std::size_t i) const { return children.at(i); }
};

// Checks the tree against the signature table and resolves lexemes. The root
// must be of category S (wrappers are stripped first).
TypedTree typecheck(const SynTree& tree, const SignatureTable& signatures, const Lexicon& lexicon);

Tense tense_of(const TypedTree& useCl);
Polarity polarity_of(const TypedTree& useCl);

}  // namespace tsem
