#pragma once

// Expressions covering every grammar production, each paired with a box on
// which it is defined and smooth.

#include <string>
#include <vector>

namespace qmf::testing {

struct CorpusEntry {
  std::string text;
  double lo;
  double hi;
};

inline const std::vector<CorpusEntry>& expression_corpus() {
  static const std::vector<CorpusEntry> corpus{
      {"2", -2, 2},
      {"x1^2", -2, 2},
      {"cosh(x1)^2", -2, 2},
      {"x1*x2 - x3", -2, 2},
      {"sinh(x1)*cosh(x2)", -2, 2},
      {"-x1^2 + 3*x2*x3", -2, 2},
      {"(x1 + x2)/(2 + x3^2)", -2, 2},
      {"sin(x1)*cos(x2) + tanh(x3)", -2, 2},
      {"exp(0.3*x1 - x2/2)", -2, 2},
      {"log(1 + x1^2 + x2^2)", -2, 2},
      {"sqrt(4 + x3)", -2, 2},
      {"2^x1 * x2", -2, 2},
      {"(1 + x1^2)^(x2/4)", -2, 2},
      {"x1^-2", 0.5, 2},
      {"1/x3", 0.5, 2},
      {"2^3^x1", -1, 0.5},
      {"-(x1 - x2)^3", -2, 2},
      {"1.5e-1*x1 + .25*x2 - 3E0", -2, 2},
      {"cosh(x1*x2)/sqrt(1 + exp(x3))", -2, 2},
      {"log(x1)*x2", 0.5, 2},
      {"tanh(sin(x1) + cos(x2*x3))^2", -2, 2},
      {"x3^2*(1 + x1^2)^0.5", -2, 2},
      {"exp(-x1^2) * (2 - sinh(x2)/4)", -2, 2},
  };
  return corpus;
}

}  // namespace qmf::testing
