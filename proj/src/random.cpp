#include "batrel/random.hpp"

#include <fstream>
#include <sstream>

namespace batrel {

ScriptedTape::ScriptedTape(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ArgumentError("scripted uniforms must lie in [0,1]");
    }
  }
}

double ScriptedTape::next() {
  if (position_ == values_.size()) {
    throw ReplayUnderrun("replay underrun: all " + std::to_string(values_.size()) +
                         " scripted uniforms consumed");
  }
  return values_[position_++];
}

RandomSource RandomSource::seeded(std::uint64_t seed) {
  RandomSource src;
  src.seed_ = seed;
  return src;
}

RandomSource RandomSource::scripted(std::vector<double> uniforms) {
  RandomSource src;
  src.tape_ = std::make_unique<ScriptedTape>(std::move(uniforms));
  return src;
}

UniformStream RandomSource::stream(std::uint64_t index) {
  if (tape_) {
    return UniformStream(*tape_);
  }
  return UniformStream(derive_seed(*seed_, index));
}

std::vector<double> parse_uniforms(std::istream& in, const std::string& origin) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string token;
    if (!(ls >> token) || token.front() == '#') {
      continue;
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    std::string extra;
    if (used != token.size() || (ls >> extra) || !(v >= 0.0 && v <= 1.0)) {
      throw ParseError(origin + ":" + std::to_string(line_no) +
                       ": expected one uniform in [0,1] per line");
    }
    values.push_back(v);
  }
  return values;
}

std::vector<double> load_uniforms_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path + ": cannot open replay file");
  }
  return parse_uniforms(in, path);
}

}  // namespace batrel
