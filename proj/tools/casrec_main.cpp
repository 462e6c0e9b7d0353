// casrec_main.cpp -- CLI stub, filled in after the library settles.
int main() { return 0; }
