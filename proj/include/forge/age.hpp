#ifndef FORGE_AGE_HPP
#define FORGE_AGE_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "forge/canonical.hpp"

namespace forge {

struct AgeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One minimal one-step extension of a structure.  `extended` agrees with the
// base on its first base.size() elements (the inclusion is the index map).
struct MinimalExtension {
  FinStructure extended;
  std::string label;
};

// A class of finite structures closed under isomorphism, presented by a
// membership predicate and a per-size enumerator of canonical
// representatives.  Values are immutable; the member cache is fill-once.
class AgeClass {
public:
  virtual ~AgeClass() = default;

  const std::string& name() const { return name_; }
  const SigPtr& signature() const { return sig_; }
  int search_bound() const { return search_bound_; }
  void set_search_bound(int b) { search_bound_ = b; }

  // Largest size any member can have, when the class is genuinely finite
  // (directory-loaded classes).  Built-in classes are unbounded.
  virtual std::optional<int> size_ceiling() const { return std::nullopt; }

  virtual bool contains(const FinStructure& s) const = 0;

  const std::vector<StructPtr>& members_of_size(int n) const {
    if (n < 0) throw AgeError(name_ + ": negative size");
    if (n > search_bound_)
      throw AgeError(name_ + ": enumerator exhausted below requested bound (size " +
                     std::to_string(n) + " > bound " + std::to_string(search_bound_) + ")");
    auto it = cache_.find(n);
    if (it == cache_.end()) it = cache_.emplace(n, generate_size(n)).first;
    return it->second;
  }

  std::vector<StructPtr> members_up_to(int n) const {
    std::vector<StructPtr> out;
    for (int s = 0; s <= n; ++s)
      for (const auto& m : members_of_size(s)) out.push_back(m);
    return out;
  }

  // Chain-construction hooks; only built-in ages support them.
  virtual bool supports_build() const { return false; }
  virtual std::vector<MinimalExtension> minimal_extensions(const FinStructure&) const {
    throw AgeError(name_ + ": class does not support chain construction");
  }
  // Smallest canonical extension of `top` (prefix inclusion) that `m` embeds into.
  virtual FinStructure joint_extend(const FinStructure&, const FinStructure&) const {
    throw AgeError(name_ + ": class does not support chain construction");
  }
  // Amalgam discharging `ext` (a minimal extension of the size-`base_size`
  // prefix of `top`) over `top`; result prefix-extends `top`.
  virtual FinStructure extend_with(const FinStructure&, int, const MinimalExtension&) const {
    throw AgeError(name_ + ": class does not support chain construction");
  }
  virtual int realize_cap() const { return search_bound_; }
  virtual int ext_stage_cap() const { return 4; }

protected:
  AgeClass(std::string name, SigPtr sig, int search_bound)
      : name_(std::move(name)), sig_(std::move(sig)), search_bound_(search_bound) {}

  virtual std::vector<StructPtr> generate_size(int n) const = 0;

  std::string name_;
  SigPtr sig_;
  int search_bound_;
  mutable std::map<int, std::vector<StructPtr>> cache_;
};

// Class given extensionally by a list of structures (e.g. loaded from a
// fixture directory).  With auto_close the list is completed with all induced
// substructures on function-closed nonempty subsets; otherwise the list is
// checked to be substructure-closed already.
class ExtensionalAge : public AgeClass {
public:
  ExtensionalAge(std::string name, SigPtr sig, std::vector<StructPtr> members,
                 bool auto_close)
      : AgeClass(std::move(name), sig, 0) {
    if (auto_close) {
      std::vector<StructPtr> all = members;
      for (const auto& m : members)
        for (auto& sub : proper_substructures(*m)) all.push_back(share(std::move(sub)));
      members_ = dedup_up_to_iso(all);
    } else {
      members_ = dedup_up_to_iso(members);
      verify_closed();
    }
    for (const auto& m : members_) ceiling_ = std::max(ceiling_, m->size());
    search_bound_ = ceiling_;
  }

  std::optional<int> size_ceiling() const override { return ceiling_; }

  bool contains(const FinStructure& s) const override {
    if (*s.sig() != *sig_) return false;
    auto sp = share(s);
    for (const auto& m : members_)
      if (are_isomorphic(m, sp)) return true;
    return false;
  }

protected:
  std::vector<StructPtr> generate_size(int n) const override {
    std::vector<StructPtr> out;
    for (const auto& m : members_)
      if (m->size() == n) out.push_back(m);
    return out;
  }

private:
  static std::vector<FinStructure> proper_substructures(const FinStructure& s) {
    std::vector<FinStructure> out;
    int n = s.size();
    if (n == 0) return out;
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
      std::vector<int> elems;
      for (int e = 0; e < n; ++e)
        if (mask & (1u << e)) elems.push_back(e);
      if (!closed_subset(s, elems)) continue;
      out.push_back(s.induced(elems));
    }
    // the empty substructure exists only without constants; classes here
    // follow the nonempty convention, so it is not added
    return out;
  }

  static bool closed_subset(const FinStructure& s, const std::vector<int>& elems) {
    std::vector<char> in(s.size(), 0);
    for (int e : elems) in[e] = 1;
    for (int c : s.constants())
      if (!in[c]) return false;
    const auto& fsyms = s.sig()->functions();
    for (std::size_t f = 0; f < fsyms.size(); ++f) {
      int ar = fsyms[f].arity;
      std::vector<std::size_t> pos(ar, 0);
      Tuple args(ar);
      bool done = elems.empty();
      while (!done) {
        for (int i = 0; i < ar; ++i) args[i] = elems[pos[i]];
        if (!in[s.fun_apply(static_cast<int>(f), args)]) return false;
        int i = ar - 1;
        while (i >= 0 && ++pos[i] == elems.size()) { pos[i] = 0; --i; }
        if (i < 0) done = true;
      }
    }
    return true;
  }

  void verify_closed() const {
    for (const auto& m : members_)
      for (auto& sub : proper_substructures(*m)) {
        if (!contains(sub))
          throw AgeError(name_ + ": member list is not substructure-closed "
                         "(size-" + std::to_string(sub.size()) + " substructure missing)");
      }
  }

  std::vector<StructPtr> members_;
  int ceiling_ = 0;
};

} // namespace forge

#endif
