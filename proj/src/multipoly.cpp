#include "uqcn/multipoly.hpp"

#include <stdexcept>

namespace uqcn {

MultiPoly MultiPoly::constant(int nvars, const ExactScalar& c) {
  MultiPoly p(nvars);
  p.add_term(Exps(nvars, 0), c);
  return p;
}

MultiPoly MultiPoly::var(int nvars, int k, const ExactScalar& c) {
  MultiPoly p(nvars);
  Exps e(nvars, 0);
  e.at(k) = 1;
  p.add_term(e, c);
  return p;
}

MultiPoly MultiPoly::monomial(const Exps& e, const ExactScalar& c) {
  MultiPoly p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

void MultiPoly::add_term(const Exps& e, const ExactScalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (nvars_ != o.nvars_) throw std::invalid_argument("variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  if (nvars_ != o.nvars_) throw std::invalid_argument("variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const ExactScalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, x] : terms_) x *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars_ != b.nvars_) throw std::invalid_argument("variable count mismatch");
  MultiPoly r(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      MultiPoly::Exps e(ea);
      for (int k = 0; k < a.nvars_; ++k) e[k] += eb[k];
      r.add_term(e, ca * cb);
    }
  return r;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [e, x] : r.terms_) x = -x;
  return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

MultiPoly MultiPoly::permuted(const std::vector<int>& perm) const {
  MultiPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    Exps f(nvars_, 0);
    for (int k = 0; k < nvars_; ++k) f[perm[k]] = e[k];
    r.add_term(f, c);
  }
  return r;
}

MultiPoly MultiPoly::substitute(int k, const ExactScalar& c) const {
  MultiPoly r(nvars_);
  for (const auto& [e, x] : terms_) {
    Exps f(e);
    f[k] = 0;
    r.add_term(f, x * c.pow(e[k]));
  }
  return r;
}

std::string MultiPoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [e, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += c.to_string();
    for (int k = 0; k < nvars_; ++k) {
      if (e[k] == 0) continue;
      s += " " + names.at(k);
      if (e[k] != 1) s += "^" + std::to_string(e[k]);
    }
  }
  return s;
}

} // namespace uqcn
