#ifndef FORGE_SIGNATURE_HPP
#define FORGE_SIGNATURE_HPP

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace forge {

// One-sorted first-order signature: relation symbols, function symbols and
// constants (0-ary functions kept in their own list).
class Signature {
public:
  struct Symbol {
    std::string name;
    int arity = 0;
  };

  Signature() = default;

  Signature(std::vector<Symbol> relations, std::vector<Symbol> functions,
            std::vector<std::string> constants)
      : relations_(std::move(relations)), functions_(std::move(functions)),
        constants_(std::move(constants)) {
    validate();
  }

  const std::vector<Symbol>& relations() const { return relations_; }
  const std::vector<Symbol>& functions() const { return functions_; }
  const std::vector<std::string>& constants() const { return constants_; }

  std::size_t symbol_count() const {
    return relations_.size() + functions_.size() + constants_.size();
  }

  int relation_index(const std::string& name) const {
    for (std::size_t i = 0; i < relations_.size(); ++i)
      if (relations_[i].name == name) return static_cast<int>(i);
    return -1;
  }
  int function_index(const std::string& name) const {
    for (std::size_t i = 0; i < functions_.size(); ++i)
      if (functions_[i].name == name) return static_cast<int>(i);
    return -1;
  }
  int constant_index(const std::string& name) const {
    for (std::size_t i = 0; i < constants_.size(); ++i)
      if (constants_[i] == name) return static_cast<int>(i);
    return -1;
  }

  bool operator==(const Signature& o) const {
    if (relations_.size() != o.relations_.size() ||
        functions_.size() != o.functions_.size() ||
        constants_ != o.constants_)
      return false;
    for (std::size_t i = 0; i < relations_.size(); ++i)
      if (relations_[i].name != o.relations_[i].name ||
          relations_[i].arity != o.relations_[i].arity)
        return false;
    for (std::size_t i = 0; i < functions_.size(); ++i)
      if (functions_[i].name != o.functions_[i].name ||
          functions_[i].arity != o.functions_[i].arity)
        return false;
    return true;
  }
  bool operator!=(const Signature& o) const { return !(*this == o); }

private:
  void validate() const {
    if (symbol_count() > 32)
      throw std::invalid_argument("signature: more than 32 symbols");
    std::set<std::string> seen;
    auto check = [&seen](const std::string& n) {
      if (n.empty()) throw std::invalid_argument("signature: empty symbol name");
      if (!seen.insert(n).second)
        throw std::invalid_argument("signature: duplicate symbol name '" + n + "'");
    };
    for (const auto& r : relations_) {
      check(r.name);
      if (r.arity < 0) throw std::invalid_argument("signature: negative arity");
    }
    for (const auto& f : functions_) {
      check(f.name);
      if (f.arity < 1)
        throw std::invalid_argument("signature: function arity must be >= 1 (use a constant)");
    }
    for (const auto& c : constants_) check(c);
  }

  std::vector<Symbol> relations_;
  std::vector<Symbol> functions_;
  std::vector<std::string> constants_;
};

using SigPtr = std::shared_ptr<const Signature>;

inline SigPtr make_signature(std::vector<Signature::Symbol> relations,
                             std::vector<Signature::Symbol> functions = {},
                             std::vector<std::string> constants = {}) {
  return std::make_shared<const Signature>(std::move(relations), std::move(functions),
                                           std::move(constants));
}

} // namespace forge

#endif
