#include <iostream>
#include <string>
#include <vector>

#include "schreier/clirun.hpp"

namespace {

const char* kUsage = R"(usage: schreier [flags] <verb> <args...>

verbs:
  member <family> <set>              membership test
  maximal <family> <set>             maximality test
  minext <family> <set>              least extension, or "maximal"
  decompose <family> <set>           standard decomposition
  admissible <family> <set>...       block-sequence admissibility
  enumerate <family> <N>             members inside [1,N]
  iota <family>                      symbolic index
  rank <family> <set>                Cantor-Bendixson rank of a member
  norm <space> <vector>...           exact norm (one vector per dsum summand)
  certify-lower <T> <set> <m> <k> <coeffs>   l1 lower estimate
  witness <X-space> <family> <set> [coeffs]  schreier-sum lower bound
  search-sum <family> <coloring> [B]         bounded witness search
  verify-sum <file>                  check a sum-witness file
  verify-prod <file>                 check a prod-witness file
  prune <family> <selector>          build and verify a pruning
  oracle-check                       rank oracle battery
  selftest                           run the acceptance suite

flags: --mode=table|records --bound N --ground N --depth N --breadth N
       --cap N --support-limit N --out FILE

grammar: ordinals  w^2*3+w+4          sets     {2,3,5}
         families  A(n) S S[x] FS[x] sum(f,g) prod(f,g) pow(f,n) pre(rel,f)
         relabel   even odd ap(a,d) tab(p1,..;a,d)
         vectors   [3:1/2,5:-2]
         spaces    X[x] sup(f) T(th,g) T(th;g0;gseq) dsum(U;X1,...)
         colorings all0 all1 parity even(maxE) both(p0,p1) ...
         selectors id double shift(k) ap(a,d)

exit codes: 0 ok, 1 domain error, 2 syntax error, 3 inconclusive search
)";

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty() || args[0] == "--help" || args[0] == "-h" || args[0] == "help") {
    std::cout << kUsage;
    return args.empty() ? 2 : 0;
  }
  return schreier::run_cli(args, std::cout, std::cerr);
}
