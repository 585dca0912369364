#ifndef FORGE_EMBEDDING_HPP
#define FORGE_EMBEDDING_HPP

#include <memory>
#include <stdexcept>
#include <vector>

#include "forge/structure.hpp"

namespace forge {

using StructPtr = std::shared_ptr<const FinStructure>;

inline StructPtr share(FinStructure s) {
  return std::make_shared<const FinStructure>(std::move(s));
}

// An injective structure map that preserves and reflects every relation and
// commutes with function tables and constants.
class Embedding {
public:
  Embedding() = default;

  Embedding(StructPtr source, StructPtr target, std::vector<int> map)
      : src_(std::move(source)), tgt_(std::move(target)), map_(std::move(map)) {}

  static Embedding identity(StructPtr s) {
    std::vector<int> m(s->size());
    for (int i = 0; i < s->size(); ++i) m[i] = i;
    return Embedding(s, s, std::move(m));
  }

  const StructPtr& source() const { return src_; }
  const StructPtr& target() const { return tgt_; }
  const std::vector<int>& map() const { return map_; }
  int operator()(int x) const { return map_[x]; }

  bool is_bijective() const { return src_->size() == tgt_->size(); }

  Embedding inverse() const {
    if (!is_bijective()) throw std::logic_error("inverse of non-bijective embedding");
    std::vector<int> inv(tgt_->size(), -1);
    for (int i = 0; i < src_->size(); ++i) inv[map_[i]] = i;
    return Embedding(tgt_, src_, std::move(inv));
  }

  // this : A -> B, then g : B -> C.
  Embedding then(const Embedding& g) const {
    if (*tgt_ != *g.src_)
      throw std::logic_error("embedding composition: endpoint mismatch");
    std::vector<int> m(src_->size());
    for (int i = 0; i < src_->size(); ++i) m[i] = g.map_[map_[i]];
    return Embedding(src_, g.tgt_, std::move(m));
  }

  bool same_arrow(const Embedding& o) const {
    return map_ == o.map_ && *src_ == *o.src_ && *tgt_ == *o.tgt_;
  }

  // Full check of the embedding conditions.
  bool valid() const {
    const FinStructure& A = *src_;
    const FinStructure& B = *tgt_;
    if (*A.sig() != *B.sig()) return false;
    if (static_cast<int>(map_.size()) != A.size()) return false;
    std::vector<char> hit(B.size(), 0);
    for (int v : map_) {
      if (v < 0 || v >= B.size() || hit[v]) return false;
      hit[v] = 1;
    }
    // relations: preserve and reflect
    const auto& rsyms = A.sig()->relations();
    for (std::size_t r = 0; r < rsyms.size(); ++r) {
      for (const Tuple& t : A.rel(static_cast<int>(r))) {
        Tuple u(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) u[i] = map_[t[i]];
        if (!B.rel_holds(static_cast<int>(r), u)) return false;
      }
      // reflect: every target tuple inside the image pulls back
      std::vector<int> pre(B.size(), -1);
      for (int i = 0; i < A.size(); ++i) pre[map_[i]] = i;
      for (const Tuple& u : B.rel(static_cast<int>(r))) {
        bool inside = true;
        for (int e : u)
          if (pre[e] < 0) { inside = false; break; }
        if (!inside) continue;
        Tuple t(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) t[i] = pre[u[i]];
        if (!A.rel_holds(static_cast<int>(r), t)) return false;
      }
    }
    const auto& fsyms = A.sig()->functions();
    for (std::size_t f = 0; f < fsyms.size(); ++f) {
      int ar = fsyms[f].arity;
      std::size_t tbl = A.fun(static_cast<int>(f)).size();
      Tuple args(ar);
      for (std::size_t idx = 0; idx < tbl; ++idx) {
        A.decode_tuple(idx, ar, args);
        Tuple margs(ar);
        for (int i = 0; i < ar; ++i) margs[i] = map_[args[i]];
        if (B.fun_apply(static_cast<int>(f), margs) !=
            map_[A.fun(static_cast<int>(f))[idx]])
          return false;
      }
    }
    for (std::size_t c = 0; c < A.constants().size(); ++c)
      if (map_[A.constant(static_cast<int>(c))] != B.constant(static_cast<int>(c)))
        return false;
    return true;
  }

private:
  StructPtr src_;
  StructPtr tgt_;
  std::vector<int> map_;
};

} // namespace forge

#endif
