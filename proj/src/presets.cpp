#include "ctmp/presets.hpp"

#include <cstdlib>
#include <sstream>
#include <vector>

#include "ctmp/errors.hpp"
#include "ctmp/model_io.hpp"

namespace ctmp {

RateModel cftr_model() {
  Matrix w(7, 7);
  w << -9.9,   5.0,   0.0,   0.0,  0.0,   0.0,   1.7,
        9.9, -12.7,   5.8,   0.0,  0.0,   0.0,   0.0,
        0.0,   7.7, -10.7,  10.0,  0.0,   0.0,   0.0,
        0.0,   0.0,   4.9, -17.1,  0.0,   0.0,   0.0,
        0.0,   0.0,   0.0,   7.1, -3.0,   7.0,   0.0,
        0.0,   0.0,   0.0,   0.0,  3.0, -13.0,  12.8,
        0.0,   0.0,   0.0,   0.0,  0.0,   6.0, -14.5;
  return RateModel(w, {3, 4}, {"1", "2", "3", "4", "5", "6", "7"});
}

RateModel chain3_model(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw OutOfRange("chain3 preset requires positive rates");
  Matrix w(3, 3);
  w <<   -a,        a,   0.0,
          a, -(a + b),     b,
        0.0,        b,    -b;
  return RateModel(w, {2}, {"1", "2", "3"});
}

RateModel loop3_model(double w32, double w13) {
  if (!(w32 > 0.0) || !(w13 > 0.0))
    throw OutOfRange("loop3 preset requires positive rates");
  const double w21 = 1.0;
  Matrix w(3, 3);
  w << -w21,   0.0,  w13,
        w21,  -w32,  0.0,
        0.0,   w32, -w13;
  return RateModel(w, {0}, {"1", "2", "3"});
}

namespace {

constexpr const char* kPrefix = "preset:";

std::vector<double> parse_args(const std::string& inside, const std::string& spec) {
  std::vector<double> args;
  std::stringstream ss(inside);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (end == item.c_str() || *end != '\0')
      throw ParseError("malformed preset argument in '" + spec + "'");
    args.push_back(v);
  }
  return args;
}

}  // namespace

bool is_preset_spec(const std::string& spec) {
  return spec.rfind(kPrefix, 0) == 0;
}

RateModel make_preset(const std::string& spec) {
  if (!is_preset_spec(spec)) throw ParseError("preset spec must start with 'preset:'");
  std::string body = spec.substr(std::string(kPrefix).size());

  std::string name = body;
  std::vector<double> args;
  const auto open = body.find('(');
  if (open != std::string::npos) {
    if (body.back() != ')') throw ParseError("unbalanced parentheses in '" + spec + "'");
    name = body.substr(0, open);
    args = parse_args(body.substr(open + 1, body.size() - open - 2), spec);
  }

  if (name == "cftr") {
    if (!args.empty()) throw ParseError("preset:cftr takes no arguments");
    return cftr_model();
  }
  if (name == "chain3") {
    if (args.size() != 2) throw ParseError("preset:chain3 expects (a,b)");
    return chain3_model(args[0], args[1]);
  }
  if (name == "loop3") {
    if (args.size() != 2) throw ParseError("preset:loop3 expects (w32,w13)");
    return loop3_model(args[0], args[1]);
  }
  throw ParseError("unknown preset '" + name + "'");
}

RateModel load_model_spec(const std::string& path_or_preset) {
  if (is_preset_spec(path_or_preset)) return make_preset(path_or_preset);
  return load_model_file(path_or_preset);
}

std::string preset_help() {
  return "preset:cftr              7-state CFTR gating model, conducting states {4,5}\n"
         "preset:chain3(a,b)       3-state chain, symmetric rates w12=w21=a, w23=w32=b,\n"
         "                         observable state {3}\n"
         "preset:loop3(w32,w13)    irreversible 3-state loop (w21=1), observable state {1}\n";
}

}  // namespace ctmp
