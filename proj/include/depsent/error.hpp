#ifndef DEPSENT_ERROR_HPP
#define DEPSENT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace depsent {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input text (bad column layout, non-numeric field, ...).
class ParseError : public Error {
public:
  using Error::Error;
};

/// Head assignments that do not form a single tree rooted at node 0.
class TreeError : public Error {
public:
  using Error::Error;
};

/// Problems loading or querying lexicon resources.
class LexiconError : public Error {
public:
  using Error::Error;
};

/// Problems loading or validating rule files.
class RuleError : public Error {
public:
  using Error::Error;
};

/// Problems loading an evaluation corpus.
class CorpusError : public Error {
public:
  using Error::Error;
};

} // namespace depsent

#endif
