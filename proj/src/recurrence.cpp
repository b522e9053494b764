#include "closurelab/recurrence.hpp"

namespace closurelab {

std::map<int, Expr> known_closed_forms(Family f, const MultiIndex& D) {
  std::map<int, std::string> src;
  if (D == MultiIndex::parse("1I") && f == Family::L) {
    src = {{2, "(n+1)*(n+2)/2"},
           {-2, "(2g+2n-3)*(2g+2n+3)/8"},
           {1, "-(n+1)*(2g+2n+3)"},
           {-1, "-(2g+2n-1)*(2g+2n+3)/2"},
           {0, "(24n^2+4*(10g+11)*n+(2g+1)*(6g+13))/8"}};
  } else if (D == MultiIndex::parse("1I") && f == Family::J) {
    src = {{2, "poch(n+1,2)*(b+2)*poch(a+n,2)*(2h+2n-3)/(poch(a+2n,4)*(2h+2n+1))"},
           {-2, "(b+2)*(2g+2n-3)*(2g+2n+3)*poch(h+n-3/2,2)/(4*poch(a+2n-3,4))"},
           {1, "(n+1)*(a-1)*(a+n)*(2g+2n+3)*(2h+2n-3)/(poch(a+2n-1,3)*(a+2n+3))"},
           {-1, "(a-1)*(2g+2n-1)*(2g+2n+3)*poch(h+n-3/2,2)/((a+2n-3)*poch(a+2n-1,3))"},
           {0, "(b+2)/(4*poch(a+2n-2,2)*poch(a+2n+1,2))*(-b*(b+4)*(2n*(a+n)-(a-2)*(a-1))"
               "+(a+2n-1)*(a+2n+1)*(2n*(a+n)-(a-2)*(2a-1)))"}};
  }
  std::map<int, Expr> out;
  for (const auto& [k, s] : src) out.emplace(k, Expr::parse(s));
  return out;
}

}  // namespace closurelab
