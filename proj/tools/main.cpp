// SPDX-License-Identifier: Apache-2.0

#include "ofdmim/cli.hpp"

int main(int argc, char** argv)
{
    return ofdmim::cli::main(argc, argv);
}
