#pragma once

#include <map>
#include <ostream>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "liebc/json_io.hpp"
#include "liebc/suite.hpp"

namespace liebc {

inline void PrintTo(const Form& f, std::ostream* os) { *os << f.to_string(); }
inline void PrintTo(const FieldElement& x, std::ostream* os) { *os << x.to_string(); }

}  // namespace liebc

namespace liebc::testing {

inline FieldElement I() { return FieldElement::i(); }
inline FieldElement S3() { return FieldElement::sqrt3(); }
inline FieldElement Q(long long p, long long q = 1) { return FieldElement(Rational(p, q)); }

// Monomial from digit strings, e.g. mono("14", "2") = phi^1 ^ phi^4 ^ conj(phi)^2.
inline Monomial mono(const std::string& holo, const std::string& anti) {
  Monomial m;
  for (char c : holo) m.holo |= 1u << (c - '1');
  for (char c : anti) m.anti |= 1u << (c - '1');
  return m;
}

using Term = std::tuple<std::string, std::string, FieldElement>;

// c * phi^{h1} ^ phi^{h2} ^ ... ^ conj(phi)^{a1} ^ ..., wedged in the listed order.
inline Form word(int n, const std::string& holo, const std::string& anti, const FieldElement& c = 1) {
  Form f = Form::constant(n, c);
  for (char ch : holo) f = wedge(f, Form::phi(n, ch - '1'));
  for (char ch : anti) f = wedge(f, Form::phibar(n, ch - '1'));
  return f;
}

inline Form form(int n, const std::vector<Term>& terms) {
  Form f(n);
  for (const auto& [h, a, c] : terms) f += word(n, h, a, c);
  return f;
}

struct Model {
  std::shared_ptr<const LieAlgebraModel> algebra;
  ComplexStructureChoice cs;
  std::unique_ptr<Bicomplex> bc;
  ExactMatrix bf;  // bi-invariant metric
};

inline StructureSpec spec_of(StructureKind k) {
  StructureSpec s;
  s.kind = k;
  return s;
}

// One shared instance per (model, structure); building g2 takes a moment.
inline const Model& model(const std::string& name, StructureKind kind = StructureKind::standard) {
  static std::map<std::pair<std::string, StructureKind>, std::unique_ptr<Model>> cache;
  auto& slot = cache[{name, kind}];
  if (!slot) {
    slot = std::make_unique<Model>();
    slot->algebra = builtin_model(name);
    slot->cs = make_structure(slot->algebra, spec_of(kind));
    slot->bc = std::make_unique<Bicomplex>(derive_structure_equations(slot->cs));
    slot->bf = biinvariant_metric(slot->cs);
  }
  return *slot;
}

// Bott-Chern generators of su3 in positive degree, in printed order.
inline std::vector<Form> su3_bott_chern_generators() {
  const int n = 4;
  const FieldElement is3 = FieldElement::i_sqrt3();
  return {
      form(n, {{"1", "1", 1}, {"2", "2", 1}}),
      form(n, {{"2", "2", 1}, {"3", "3", -1}}),
      form(n, {{"14", "1", 2}, {"23", "1", -2}, {"24", "2", Q(1) - is3}, {"34", "3", Q(1) + is3}}),
      form(n, {{"1", "14", 2}, {"1", "23", -2}, {"2", "24", Q(1) + is3}, {"3", "34", Q(1) - is3}}),
      word(n, "12", "12"),
      word(n, "13", "13"),
      form(n, {{"124", "12", 2}, {"234", "23", is3 - Q(1)}}),
      form(n, {{"12", "124", 2}, {"23", "234", -(is3 + Q(1))}}),
      word(n, "123", "123"),
      word(n, "1234", "123"),
      word(n, "123", "1234"),
      word(n, "1234", "1234"),
  };
}

inline std::string data_dir() { return LIEBC_DATA_DIR; }

}  // namespace liebc::testing
