#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stackmorph
{

/// Base class of every error raised by the library.
class error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Operands live on different windows, have different sizes or levels.
class dimension_error : public error
{
public:
  using error::error;
};

/// A scalar argument (level, threshold, probability) is out of range.
class domain_error : public error
{
public:
  using error::error;
};

/// An enumeration would exceed its cap. `required` is the count that was needed.
class capacity_error : public error
{
public:
  capacity_error( const std::string& what_arg, double required )
      : error( what_arg ), required_( required )
  {
  }

  double required() const noexcept { return required_; }

private:
  double required_;
};

/// Slices passed to reconstruction do not decrease with the level.
class stacking_error : public error
{
public:
  stacking_error( const std::string& what_arg, int level, std::size_t pixel )
      : error( what_arg ), level_( level ), pixel_( pixel )
  {
  }

  int level() const noexcept { return level_; }
  std::size_t pixel() const noexcept { return pixel_; }

private:
  int level_;
  std::size_t pixel_;
};

class composition_error : public error
{
public:
  using error::error;
};

/// Malformed input file. `offset` is the byte offset where parsing stopped.
class parse_error : public error
{
public:
  parse_error( const std::string& what_arg, std::size_t offset )
      : error( what_arg + " (at byte " + std::to_string( offset ) + ")" ), offset_( offset )
  {
  }

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

/// Bad user request: unknown builtin name, malformed window spec.
class usage_error : public error
{
public:
  using error::error;
};

/// Training data or image pairs that do not line up.
class data_error : public error
{
public:
  using error::error;
};

} // namespace stackmorph
