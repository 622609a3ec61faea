# gnd-core tests
