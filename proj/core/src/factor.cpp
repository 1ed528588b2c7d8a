#include "strawbn/factor.hpp"

#include <algorithm>

#include "strawbn/errors.hpp"

namespace strawbn {

namespace {

// Stride of each scope position in the row-major value array.
std::vector<std::size_t> strides_of(const Factor& f) {
  std::vector<std::size_t> strides(f.scope.size(), 1);
  for (std::size_t i = f.scope.size(); i-- > 1;) {
    strides[i - 1] = strides[i] * f.cards[i];
  }
  return strides;
}

std::size_t position_in(const Factor& f, std::uint32_t var,
                        const std::vector<std::size_t>& strides,
                        std::size_t* stride_out) {
  for (std::size_t i = 0; i < f.scope.size(); ++i) {
    if (f.scope[i] == var) {
      *stride_out = strides[i];
      return i;
    }
  }
  *stride_out = 0;
  return f.scope.size();
}

}  // namespace

bool Factor::has_var(std::uint32_t var) const {
  return std::find(scope.begin(), scope.end(), var) != scope.end();
}

double Factor::at(std::span<const std::uint32_t> digits) const {
  return values[config_to_index(cards, digits)];
}

Factor factor_product(const Factor& f, const Factor& g) {
  Factor out;
  out.scope = f.scope;
  out.cards = f.cards;
  for (std::size_t i = 0; i < g.scope.size(); ++i) {
    auto it = std::find(out.scope.begin(), out.scope.end(), g.scope[i]);
    if (it == out.scope.end()) {
      out.scope.push_back(g.scope[i]);
      out.cards.push_back(g.cards[i]);
    } else if (out.cards[static_cast<std::size_t>(it - out.scope.begin())] !=
               g.cards[i]) {
      throw FactorError("operands disagree on the state count of variable " +
                        std::to_string(g.scope[i]));
    }
  }

  const auto f_strides = strides_of(f);
  const auto g_strides = strides_of(g);
  std::vector<std::size_t> f_step(out.scope.size(), 0), g_step(out.scope.size(), 0);
  for (std::size_t i = 0; i < out.scope.size(); ++i) {
    std::size_t s = 0;
    position_in(f, out.scope[i], f_strides, &s);
    f_step[i] = s;
    position_in(g, out.scope[i], g_strides, &s);
    g_step[i] = s;
  }

  out.values.resize(num_configs(out.cards));
  std::vector<std::uint32_t> digits(out.scope.size(), 0);
  std::size_t fi = 0, gi = 0;
  for (std::size_t o = 0; o < out.values.size(); ++o) {
    out.values[o] = f.values[fi] * g.values[gi];
    for (std::size_t k = out.scope.size(); k-- > 0;) {
      ++digits[k];
      fi += f_step[k];
      gi += g_step[k];
      if (digits[k] < out.cards[k]) break;
      digits[k] = 0;
      fi -= f_step[k] * out.cards[k];
      gi -= g_step[k] * out.cards[k];
    }
  }
  return out;
}

Factor factor_marginalize(const Factor& f, std::uint32_t var) {
  if (!f.has_var(var)) {
    throw FactorError("variable " + std::to_string(var) + " is not in scope");
  }
  Factor out;
  for (std::size_t i = 0; i < f.scope.size(); ++i) {
    if (f.scope[i] != var) {
      out.scope.push_back(f.scope[i]);
      out.cards.push_back(f.cards[i]);
    }
  }
  out.values.assign(num_configs(out.cards), 0.0);

  const auto out_strides = strides_of(out);
  std::vector<std::size_t> out_step(f.scope.size(), 0);
  for (std::size_t i = 0; i < f.scope.size(); ++i) {
    if (f.scope[i] == var) continue;
    std::size_t s = 0;
    position_in(out, f.scope[i], out_strides, &s);
    out_step[i] = s;
  }

  std::vector<std::uint32_t> digits(f.scope.size(), 0);
  std::size_t oi = 0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    out.values[oi] += f.values[i];
    for (std::size_t k = f.scope.size(); k-- > 0;) {
      ++digits[k];
      oi += out_step[k];
      if (digits[k] < f.cards[k]) break;
      digits[k] = 0;
      oi -= out_step[k] * f.cards[k];
    }
  }
  return out;
}

Factor factor_reduce(const Factor& f, std::uint32_t var, std::uint32_t state) {
  const auto f_strides = strides_of(f);
  std::size_t var_stride = 0;
  std::size_t pos = position_in(f, var, f_strides, &var_stride);
  if (pos == f.scope.size()) {
    throw FactorError("variable " + std::to_string(var) + " is not in scope");
  }
  if (state >= f.cards[pos]) {
    throw FactorError("state index " + std::to_string(state) +
                      " out of range for variable " + std::to_string(var));
  }

  Factor out;
  for (std::size_t i = 0; i < f.scope.size(); ++i) {
    if (i != pos) {
      out.scope.push_back(f.scope[i]);
      out.cards.push_back(f.cards[i]);
    }
  }
  out.values.resize(num_configs(out.cards));

  std::vector<std::size_t> f_step;
  for (std::size_t i = 0; i < f.scope.size(); ++i) {
    if (i != pos) f_step.push_back(f_strides[i]);
  }
  std::vector<std::uint32_t> digits(out.scope.size(), 0);
  std::size_t fi = var_stride * state;
  for (std::size_t o = 0; o < out.values.size(); ++o) {
    out.values[o] = f.values[fi];
    for (std::size_t k = out.scope.size(); k-- > 0;) {
      ++digits[k];
      fi += f_step[k];
      if (digits[k] < out.cards[k]) break;
      digits[k] = 0;
      fi -= f_step[k] * out.cards[k];
    }
  }
  return out;
}

double factor_total(const Factor& f) {
  double sum = 0.0;
  for (double v : f.values) sum += v;
  return sum;
}

Factor cpt_factor(const Network& net, std::uint32_t var) {
  const Cpt& cpt = net.cpt_of(var);
  Factor f;
  f.scope.reserve(cpt.parents.size() + 1);
  for (auto p : cpt.parents) {
    f.scope.push_back(p);
    f.cards.push_back(net.card(p));
  }
  f.scope.push_back(cpt.child);
  f.cards.push_back(net.card(cpt.child));
  f.values.reserve(num_configs(f.cards));
  for (const auto& row : cpt.rows) {
    f.values.insert(f.values.end(), row.begin(), row.end());
  }
  if (f.values.size() != num_configs(f.cards)) {
    throw FactorError("CPT of \"" + net.var(var).name +
                      "\" has inconsistent dimensions");
  }
  return f;
}

}  // namespace strawbn
