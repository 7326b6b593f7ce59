// Maintenance helper: writes the built-in lexicon pack in its canonical file
// form. Used to regenerate data/packs/default.json after editing the
// built-in tables.

#include <iostream>

#include "ilion/lexicon.hpp"

int main(int argc, char** argv) {
  if (argc > 2) {
    std::cerr << "usage: ilion-pack-dump [out.json]\n";
    return 1;
  }
  try {
    if (argc == 2) {
      ilion::save_lexicon_pack(ilion::default_pack(), argv[1]);
    } else {
      std::cout << ilion::serialize_lexicon_pack(ilion::default_pack());
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
