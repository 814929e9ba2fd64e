#pragma once

#include <string>

#include "grouplog/groupring.hpp"

namespace grouplog {

// Element literal grammar:
//   elem   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := int | ringvar ('^' int)? | gen ('^' int)? | '(' elem ')'
// with ring variables T (power series), z (cyclotomic), w (unramified) and
// the group generators as declared by the constructor. An optional trailing
// "@p^k" truncates the result to precision k. Whitespace insignificant.
// Parse errors carry the character position.
GrElem parse_element(const std::string& text, const GroupPtr& G, const RingPtr& R,
                     unsigned prec);

std::string serialize(const GrElem& x);   // element grammar plus "@p^n"
std::string serialize(const ClassVec& v); // class-indexed rendering plus "@p^n"

}  // namespace grouplog
