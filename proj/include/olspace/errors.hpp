#pragma once

#include <stdexcept>
#include <string>

namespace olspace {

// Base class for everything thrown by the library.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

class lex_error : public error {
 public:
  lex_error(int position, const std::string& snippet)
      : error("lex error at column " + std::to_string(position) + ": '" + snippet + "'"),
        position(position),
        snippet(snippet) {}
  int position;  // 1-based column
  std::string snippet;
};

class parse_error : public error {
 public:
  parse_error(int position, const std::string& expected)
      : error("parse error at column " + std::to_string(position) + ": expected " + expected),
        position(position),
        expected(expected) {}
  int position;
  std::string expected;
};

class eval_domain_error : public error {
 public:
  eval_domain_error(const std::string& node, double argument)
      : error("domain error in " + node + " at argument " + std::to_string(argument)),
        node(node),
        argument(argument) {}
  std::string node;
  double argument;
};

class search_exhausted : public error {
 public:
  explicit search_exhausted(const std::string& what) : error("search exhausted: " + what) {}
};

class mass_exceeds_budget : public error {
 public:
  mass_exceeds_budget(std::size_t index, double requested, double available)
      : error("mass budget exceeded at index " + std::to_string(index) + " (requested " +
              std::to_string(requested) + ", available " + std::to_string(available) + ")"),
        index(index),
        requested(requested),
        available(available) {}
  std::size_t index;
  double requested;
  double available;
};

class non_integrable : public error {
 public:
  explicit non_integrable(const std::string& what) : error("not locally integrable: " + what) {}
};

class zero_function : public error {
 public:
  explicit zero_function(const std::string& what) : error("zero function: " + what) {}
};

class invalid_input : public error {
 public:
  explicit invalid_input(const std::string& what) : error(what) {}
};

}  // namespace olspace
