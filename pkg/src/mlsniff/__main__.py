from mlsniff.cli import main

main()
