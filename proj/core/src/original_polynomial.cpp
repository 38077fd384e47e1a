#include "syncov/original_polynomial.hpp"

#include <algorithm>
#include <optional>

#include "syncov/error.hpp"

namespace syncov {
namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) return UINT64_MAX;
  return out;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) return UINT64_MAX;
  return out;
}

class Expander {
 public:
  Expander(const DependencyTree& tree, std::size_t label_count, std::uint64_t budget)
      : tree_(tree), label_count_(static_cast<LabelId>(label_count)), budget_(budget) {}

  Polynomial node(std::size_t pos, std::vector<std::optional<Polynomial>>& done) {
    const LabelId label = tree_.label(pos);
    const int id = tree_.nodes()[pos].id;
    const auto children = tree_.children(pos);
    if (children.empty()) {
      return Polynomial({Term{TermVector::single(label), 1}});
    }

    Polynomial acc = std::move(*done[children[0]]);
    done[children[0]].reset();
    for (std::size_t i = 1; i < children.size(); ++i) {
      acc = product(acc, *done[children[i]], id);
      done[children[i]].reset();
    }

    std::vector<Term> terms(acc.terms().begin(), acc.terms().end());
    terms.push_back({TermVector::single(label_count_ + label), 1});
    stats_.additions += terms.size();
    check(saturating_add(acc.term_count(), 1), id);
    return Polynomial(std::move(terms));
  }

  OriginalStats stats() const { return stats_; }

 private:
  Polynomial product(const Polynomial& a, const Polynomial& b, int id) {
    // The multiset size of a product is known before expanding it.
    check(saturating_mul(a.term_count(), b.term_count()), id);
    std::vector<Term> out;
    out.reserve(a.distinct_terms() * b.distinct_terms());
    for (const auto& s : a.terms()) {
      for (const auto& t : b.terms()) {
        out.push_back({multiply(s.vector, t.vector), s.multiplicity * t.multiplicity});
      }
    }
    stats_.multiplications += out.size();
    stats_.additions += out.size();
    return Polynomial(std::move(out));
  }

  void check(std::uint64_t terms, int id) {
    stats_.peak_terms = std::max(stats_.peak_terms, terms);
    if (terms > budget_) throw TermExplosion(id, terms, budget_);
  }

  const DependencyTree& tree_;
  LabelId label_count_;
  std::uint64_t budget_;
  OriginalStats stats_;
};

}  // namespace

OriginalResult original_polynomial(const DependencyTree& tree, const LabelVocabulary& vocab,
                                   std::uint64_t term_budget) {
  if (term_budget == 0) {
    throw DomainError("original_polynomial requires a positive term budget");
  }
  tree.check_labels(vocab);

  Expander expander(tree, vocab.size(), term_budget);
  std::vector<std::optional<Polynomial>> done(tree.size());

  // Iterative post-order: children are finished before their parent.
  std::vector<std::pair<std::size_t, std::size_t>> stack{{tree.root(), 0}};
  while (!stack.empty()) {
    const std::size_t pos = stack.back().first;
    const auto children = tree.children(pos);
    if (stack.back().second < children.size()) {
      const std::size_t child = children[stack.back().second++];
      stack.emplace_back(child, 0);
    } else {
      done[pos] = expander.node(pos, done);
      stack.pop_back();
    }
  }

  OriginalResult result;
  result.polynomial.terms = std::move(*done[tree.root()]);
  result.polynomial.label_count = vocab.size();
  result.stats = expander.stats();
  return result;
}

std::string format_original(const OriginalPolynomial& p, const LabelVocabulary& vocab) {
  std::string out;
  for (const auto& term : p.terms.terms()) {
    if (!out.empty()) out += " + ";
    if (term.multiplicity != 1) out += std::to_string(term.multiplicity) + " ";
    bool first = true;
    for (const auto& e : term.vector.entries()) {
      if (!first) out += '*';
      first = false;
      out += p.is_y(e.label) ? "y_" : "x_";
      out += vocab.name(p.label_of(e.label));
      if (e.exponent != 1) out += "^" + std::to_string(e.exponent);
    }
  }
  return out;
}

}  // namespace syncov
